"""Explicit Runge-Kutta integration of either picture, plus drift monitoring.

Two methods are provided: classical fixed-step RK4 and the adaptive
Dormand-Prince 5(4) pair with its quartic dense output.  Integration stops
early (status ``"domain_exit"``) when the solution comes within
``boundary_margin`` of a singular domain edge or a stage leaves the domain.
"""

import enum
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate as _sp_integrate

from .dynamics import PhaseState, canonical_rhs, invariant_rhs, newton_rhs, power_value
from .errors import DomainError, IntegrationError
from .trajectories import build_trajectory

log = logging.getLogger(__name__)


class Method(enum.Enum):
    RK4_FIXED = "RK4_fixed"
    RK45_ADAPTIVE = "RK45_adaptive"


@dataclass(frozen=True)
class IntegratorConfig:
    method: Method = Method.RK45_ADAPTIVE
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_step: float = math.inf
    initial_step: Optional[float] = None
    max_steps: int = 1_000_000
    # fixed step for RK4 (defaults to initial_step, then (t1 - t0)/1000)
    step: Optional[float] = None
    boundary_margin: float = 1e-9

    def __post_init__(self):
        if isinstance(self.method, str):
            object.__setattr__(self, "method", Method(self.method))
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if not self.max_steps > 0:
            raise ValueError("max_steps must be positive")


@dataclass
class ODESolution:
    t: np.ndarray
    y: np.ndarray  # shape (n, dim)
    status: str  # "success" | "domain_exit"
    message: str
    nfev: int
    n_steps: int
    n_rejected: int = 0

    @property
    def success(self):
        return self.status == "success"


# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A_ROWS = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_A = [np.array(row) for row in _A_ROWS]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array([-71 / 57600, 0.0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40])
# dense-output polynomial coefficients (Shampine), columns multiply theta^1..theta^4
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])


def _as_rhs(rhs):
    def f(t, y):
        return np.asarray(rhs(t, y), dtype=float)
    return f


def _rk4(f, t0, y0, t1, h, t_eval, distance, cfg):
    n = max(1, int(math.ceil((t1 - t0) / h - 1e-9)))
    h = (t1 - t0) / n
    ts, ys = [t0], [y0]
    y, t, nfev = y0, t0, 0
    status, msg = "success", "reached t1"
    for i in range(n):
        try:
            k1 = f(t, y)
            k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
            k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
            k4 = f(t + h, y + h * k3)
        except DomainError as exc:
            status, msg = "domain_exit", str(exc)
            break
        nfev += 4
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (i + 1) * h
        ts.append(t)
        ys.append(y)
        if distance is not None and distance(y) < cfg.boundary_margin:
            status, msg = "domain_exit", f"within {cfg.boundary_margin} of the domain edge at t={t}"
            break
    ts, ys = np.array(ts), np.array(ys)
    if t_eval is not None:
        # RK4 output is only available on the step grid
        keep = np.isin(ts, t_eval)
        ts, ys = ts[keep], ys[keep]
    return ODESolution(ts, ys, status, msg, nfev, len(ts) - 1)


def _initial_step(f, t0, y0, f0, t1, cfg):
    scale = cfg.abs_tol + np.abs(y0) * cfg.rel_tol
    d0 = np.linalg.norm(y0 / scale) / math.sqrt(len(y0))
    d1 = np.linalg.norm(f0 / scale) / math.sqrt(len(y0))
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, t1 - t0)
    try:
        f1 = f(t0 + h0, y0 + h0 * f0)
    except DomainError:
        return h0 * 1e-3
    d2 = np.linalg.norm((f1 - f0) / scale) / math.sqrt(len(y0)) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, cfg.max_step)


def _dense(y_old, h, K, theta):
    p = np.cumprod(np.full(4, theta))
    return y_old + h * (K.T @ (_P @ p))


def _dp45(f, t0, y0, t1, t_eval, distance, cfg):
    safety, min_fac, max_fac = 0.9, 0.2, 10.0
    t, y = t0, y0
    f0 = f(t, y)
    nfev = 1
    h = cfg.initial_step or _initial_step(f, t0, y0, f0, t1, cfg)
    nfev += 1
    ts, ys = [t0], [y0]
    out_t, out_y = [], []
    ev = list(np.asarray(t_eval, dtype=float)) if t_eval is not None else None
    ev_i = 0
    if ev is not None:
        while ev_i < len(ev) and ev[ev_i] <= t0:
            out_t.append(ev[ev_i])
            out_y.append(y0)
            ev_i += 1
    K = np.empty((7, len(y0)))
    status, msg = "success", "reached t1"
    steps = rejected = 0
    while t < t1:
        if steps >= cfg.max_steps:
            raise IntegrationError(f"max_steps={cfg.max_steps} exhausted at t={t}")
        h = min(h, cfg.max_step, t1 - t)
        if t + h >= t1 or (t1 - (t + h)) < 1e-12 * max(1.0, abs(t1)):
            h = t1 - t
        if h < 1e-14 * max(1.0, abs(t)):
            status, msg = "domain_exit", f"step size underflow at t={t}"
            break
        K[0] = f0
        try:
            for s in range(1, 7):
                dy = h * (_A[s] @ K[:s])
                K[s] = f(t + _C[s] * h, y + dy)
            nfev += 6
        except DomainError:
            rejected += 1
            h *= 0.25
            continue
        y_new = y + h * (_B @ K)
        err = h * (_E @ K)
        scale = cfg.abs_tol + np.maximum(np.abs(y), np.abs(y_new)) * cfg.rel_tol
        err_norm = float(np.max(np.abs(err) / scale))
        if err_norm > 1.0:
            rejected += 1
            h *= max(min_fac, safety * err_norm ** -0.2)
            continue
        t_new = t + h
        if ev is not None:
            while ev_i < len(ev) and ev[ev_i] <= t_new:
                theta = (ev[ev_i] - t) / h
                out_t.append(ev[ev_i])
                out_y.append(y_new if ev[ev_i] == t_new else _dense(y, h, K, theta))
                ev_i += 1
        t, y, f0 = t_new, y_new, K[6].copy()
        ts.append(t)
        ys.append(y)
        steps += 1
        fac = max_fac if err_norm == 0.0 else min(max_fac, safety * err_norm ** -0.2)
        h *= fac
        if distance is not None and distance(y) < cfg.boundary_margin:
            status, msg = "domain_exit", f"within {cfg.boundary_margin} of the domain edge at t={t}"
            break
    if ev is not None:
        return ODESolution(np.array(out_t), np.array(out_y).reshape(len(out_t), len(y0)),
                           status, msg, nfev, steps, rejected)
    return ODESolution(np.array(ts), np.array(ys), status, msg, nfev, steps, rejected)


def integrate(rhs, state0, t0, t1, config=None, t_eval=None, boundary_distance=None):
    """Integrate ``dy/dt = rhs(t, y)`` from ``t0`` to ``t1``.

    ``t_eval`` selects output times (dense output for the adaptive method);
    otherwise every accepted step is returned.  ``boundary_distance(y)``
    enables the domain-exit event.
    """
    cfg = config or IntegratorConfig()
    if not t1 > t0:
        raise ValueError("t1 must be greater than t0")
    f = _as_rhs(rhs)
    y0 = np.asarray(state0, dtype=float).copy()
    if cfg.method is Method.RK4_FIXED:
        h = cfg.step or cfg.initial_step or (t1 - t0) / 1000.0
        sol = _rk4(f, t0, y0, t1, h, t_eval, boundary_distance, cfg)
    else:
        sol = _dp45(f, t0, y0, t1, t_eval, boundary_distance, cfg)
    if sol.status != "success":
        log.info("integration stopped early: %s", sol.message)
    return sol


# -- picture wrappers -------------------------------------------------------------

PICTURES = ("newton", "canonical", "invariant")


def picture_rhs(spec, picture):
    """Right-hand side ``rhs(t, y)`` of the chosen picture.

    State vectors are ``(x, v)`` for ``newton``, ``(x, p)`` for ``canonical``
    and ``(x, pi)`` for ``invariant``.
    """
    if picture == "newton":
        return lambda t, y: newton_rhs(spec, y[0], y[1], t)
    if picture == "canonical":
        return lambda t, y: canonical_rhs(spec, y[0], y[1], t)
    if picture == "invariant":
        return lambda t, y: invariant_rhs(spec, y[0], y[1], t)
    raise ValueError(f"unknown picture {picture!r}; expected one of {PICTURES}")


def _initial_vector(state, picture):
    second = {"newton": state.v, "canonical": state.p, "invariant": state.pi}[picture]
    return np.array([state.x, second])


def _to_state(spec, picture, t, y):
    x, w = float(y[0]), float(y[1])
    if picture == "newton":
        return PhaseState.from_velocity(spec.mass, float(t), x, w)
    if picture == "canonical":
        return PhaseState.from_momentum(spec.mass, float(t), x, w)
    return PhaseState.from_invariant_momentum(spec.mass, float(t), x, w)


def integrate_picture(spec, picture, state0, t0, t1, config=None, t_eval=None, script=True):
    """Integrate one picture from ``state0`` and return a :class:`Trajectory`."""
    dom = spec.domain
    sol = integrate(picture_rhs(spec, picture), _initial_vector(state0, picture), t0, t1,
                    config, t_eval, boundary_distance=lambda y: dom.distance_to_boundary(y[0]))
    states = [_to_state(spec, picture, t, y) for t, y in zip(sol.t, sol.y)]
    meta = {"picture": picture, "status": sol.status, "message": sol.message,
            "nfev": sol.nfev, "n_steps": sol.n_steps, "source": "numeric"}
    return build_trajectory(spec, states, meta, script=script)


# -- drift diagnostics --------------------------------------------------------------

@dataclass
class DriftReport:
    max_relative_H_drift: float
    max_relative_Q_drift: float
    dissipated_energy_check_residual: float
    delta_H_script: float = math.nan
    integrated_power: float = math.nan

    def to_dict(self):
        return dict(self.__dict__)


def _max_relative_drift(values, ref):
    values = np.asarray(values)
    finite = values[np.isfinite(values)]
    if finite.size == 0 or not math.isfinite(ref):
        return math.nan
    return float(np.max(np.abs(finite - ref)) / max(abs(ref), 1e-300))


def drift_report(trajectory, spec):
    """Drift of ``H`` and ``|Q|^2`` relative to their initial values, and the
    residual ``|int power dt - Delta H_script| / |Delta H_script|``.

    The power integral uses Simpson's rule on the trajectory samples, so the
    residual reflects both the sampling density and the integration error.
    """
    if len(trajectory) == 0:
        raise ValueError("empty trajectory")
    H = trajectory.H_inv
    h_drift = _max_relative_drift(H, H[0])
    q_drift = _max_relative_drift(trajectory.Qabs2, trajectory.Qabs2[0])
    residual, dH, W = math.nan, math.nan, math.nan
    if len(trajectory) >= 3 and np.all(np.isfinite(trajectory.H_script)):
        power = np.array([power_value(spec, x, v) for x, v in zip(trajectory.x, trajectory.v)])
        W = float(_sp_integrate.simpson(power, x=trajectory.t))
        dH = float(trajectory.H_script[-1] - trajectory.H_script[0])
        residual = abs(W - dH) / abs(dH) if dH != 0.0 else abs(W - dH)
    return DriftReport(h_drift, q_drift, residual, dH, W)
