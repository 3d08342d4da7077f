"""``pdm`` command-line front end.

    pdm analytic        --config CFG [--output CSV]
    pdm simulate        --config CFG [--output CSV]   (drift JSON in CSV + ".drift.json")
    pdm compare         --config CFG [--output JSON] [--threshold 1e-6]
    pdm verify-algebra  --config CFG [--output JSON] [--threshold 1e-6]

Exit codes: 0 success, 1 threshold exceeded, 2 bad config, 3 energy-regime
violation, 4 numerical failure.  ``PDM_LOG`` sets the log level
(``DEBUG``, ``INFO``, ``WARNING``...).
"""

import argparse
import json
import logging
import os
import sys

import numpy as np

from .config import load_config
from .csvio import write_trajectory_csv
from .dynamics import PhaseState
from .errors import ConfigError, PDMError, RegimeError
from .factorization import default_grid, verify_algebra
from .integrator import drift_report, integrate_picture
from .trajectories import TrajectorySpec, analytic_state, is_confined, sample_trajectory

log = logging.getLogger("pdmech")

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_CONFIG = 2
EXIT_REGIME = 3
EXIT_NUMERIC = 4

DEFAULT_SAMPLES = 201
DEFAULT_THRESHOLD = 1e-6


def _tspec(cfg):
    if not cfg.system.is_pt:
        raise ConfigError("this command needs a Poschl-Teller system (system.potential = 'pt')")
    if cfg.E is None:
        raise ConfigError("trajectory.E is required")
    return TrajectorySpec(cfg.system, cfg.E, cfg.phi0)


def _end_time(cfg, tspec=None):
    if cfg.t1 is not None:
        if not cfg.t1 > cfg.t0:
            raise ConfigError("trajectory.t1 must be greater than t0")
        return cfg.t1
    if tspec is None:
        raise ConfigError("trajectory.t1 is required without a Poschl-Teller energy")
    return cfg.t0 + cfg.periods * tspec.period


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_json(obj, path):
    out, close = _open_out(path)
    try:
        json.dump(obj, out, indent=2, sort_keys=True, allow_nan=True)
        out.write("\n")
    finally:
        if close:
            out.close()


def _emit_csv(traj, path):
    out, close = _open_out(path)
    try:
        write_trajectory_csv(traj, out)
    finally:
        if close:
            out.close()


def cmd_analytic(args):
    cfg = load_config(args.config)
    tspec = _tspec(cfg)
    t1 = _end_time(cfg, tspec)
    traj = sample_trajectory(tspec, cfg.t0, t1, cfg.samples or DEFAULT_SAMPLES,
                             integrator_config=cfg.integrator)
    _emit_csv(traj, args.output)
    return EXIT_OK


def cmd_simulate(args):
    cfg = load_config(args.config)
    spec = cfg.system
    tspec = None
    if cfg.x0 is not None:
        state0 = PhaseState.from_velocity(spec.mass, cfg.t0, cfg.x0, cfg.v0 or 0.0)
        if spec.is_pt and cfg.E is not None:
            tspec = _tspec(cfg)
    else:
        tspec = _tspec(cfg)
        state0 = analytic_state(tspec, cfg.t0)
    t1 = _end_time(cfg, tspec)
    t_eval = np.linspace(cfg.t0, t1, cfg.samples) if cfg.samples else None
    traj = integrate_picture(spec, cfg.picture, state0, cfg.t0, t1, cfg.integrator, t_eval)
    _emit_csv(traj, args.output)
    report = drift_report(traj, spec).to_dict()
    report.update(picture=cfg.picture, status=traj.meta["status"], n_steps=traj.meta["n_steps"])
    if args.output and args.output != "-":
        _emit_json(report, args.output + ".drift.json")
    else:
        json.dump(report, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
    if traj.meta["status"] != "success":
        log.warning("integration stopped early: %s", traj.meta["message"])
    return EXIT_OK


def compare_report(cfg, threshold=DEFAULT_THRESHOLD):
    """Integrate the invariant picture from the analytic state at ``t0`` and
    measure the deviation from the closed-form trajectory."""
    tspec = _tspec(cfg)
    if not is_confined(tspec):
        raise RegimeError("compare needs a confined orbit; this energy gives scattering motion")
    t1 = _end_time(cfg, tspec)
    ts = np.linspace(cfg.t0, t1, cfg.samples or DEFAULT_SAMPLES)
    spec = cfg.system
    traj = integrate_picture(spec, "invariant", analytic_state(tspec, cfg.t0), cfg.t0, t1,
                             cfg.integrator, ts, script=False)
    n = len(traj)
    dx = dpi = 0.0
    for i in range(n):
        exact = analytic_state(tspec, float(traj.t[i]))
        dx = max(dx, abs(traj.x[i] - exact.x))
        dpi = max(dpi, abs(traj.pi[i] - exact.pi))
    complete = traj.meta["status"] == "success" and n == len(ts)
    return {
        "max_abs_dx": dx,
        "max_abs_dpi": dpi,
        "periods": (t1 - cfg.t0) / tspec.period,
        "samples": n,
        "status": traj.meta["status"],
        "n_steps": traj.meta["n_steps"],
        "threshold": threshold,
        "passed": bool(complete and dx < threshold and dpi < threshold),
    }


def cmd_compare(args):
    report = compare_report(load_config(args.config), args.threshold)
    _emit_json(report, args.output)
    return EXIT_OK if report["passed"] else EXIT_THRESHOLD


def cmd_verify_algebra(args):
    cfg = load_config(args.config)
    spec = cfg.system
    if not spec.is_pt:
        raise ConfigError("verify-algebra needs a Poschl-Teller system")
    grid_cfg = cfg.grid
    points = default_grid(spec, nx=grid_cfg.get("nx", 32), npi=grid_cfg.get("npi", 32),
                          fraction=grid_cfg.get("fraction", 0.8))
    report = verify_algebra(spec, points, step=grid_cfg.get("step", 1e-6),
                            richardson=bool(grid_cfg.get("richardson", True)))
    report.grid = {"kind": "default", "nx": grid_cfg.get("nx", 32),
                   "npi": grid_cfg.get("npi", 32), "points": len(points)}
    out = report.to_dict()
    out["threshold"] = args.threshold
    out["passed"] = bool(report.max_residual < args.threshold)
    _emit_json(out, args.output)
    return EXIT_OK if out["passed"] else EXIT_THRESHOLD


COMMANDS = {
    "analytic": cmd_analytic,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "verify-algebra": cmd_verify_algebra,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="pdm", description="Position-dependent-mass dynamics")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                       help="pass/fail threshold for compare and verify-algebra")
    return parser


def _setup_logging():
    level = os.environ.get("PDM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"pdm: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RegimeError as exc:
        print(f"pdm: regime error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (PDMError, ArithmeticError, ValueError) as exc:
        print(f"pdm: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
