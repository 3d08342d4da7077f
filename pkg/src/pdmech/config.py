"""Strict JSON run configuration.

Layout (unknown keys anywhere are errors)::

    {
      "mass":       {"family", "m0", "lambda", "beta", "kappa", "role"},
      "system":     {"gamma", "alpha", "epsilon", "c", "potential"},
      "trajectory": {"E", "phi0", "t0", "t1", "periods", "samples", "x0", "v0"},
      "integrator": {"method", "abs_tol", "rel_tol", "max_step", "initial_step",
                     "max_steps", "step", "boundary_margin"},
      "picture":    "newton" | "canonical" | "invariant",
      "grid":       {"nx", "npi", "fraction", "step", "richardson"}
    }

``system.potential`` is ``"pt"`` (default) or ``"zero"``.  ``t1`` defaults
to ``t0 + periods * T`` with ``periods = 1``.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .dynamics import SystemSpec, zero_potential
from .errors import ConfigError, DomainError
from .integrator import PICTURES, IntegratorConfig, Method
from .mass_models import MassFamily, MassModel, MassRole

_SECTIONS = {
    "mass": {"family", "m0", "lambda", "beta", "kappa", "role"},
    "system": {"gamma", "alpha", "epsilon", "c", "potential"},
    "trajectory": {"E", "phi0", "t0", "t1", "periods", "samples", "x0", "v0"},
    "integrator": {"method", "abs_tol", "rel_tol", "max_step", "initial_step", "max_steps",
                   "step", "boundary_margin"},
    "grid": {"nx", "npi", "fraction", "step", "richardson"},
}
_TOP = set(_SECTIONS) | {"picture"}


@dataclass
class RunConfig:
    system: SystemSpec
    E: Optional[float] = None
    phi0: float = 0.0
    t0: float = 0.0
    t1: Optional[float] = None
    periods: float = 1.0
    samples: Optional[int] = None
    x0: Optional[float] = None
    v0: Optional[float] = None
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    picture: str = "invariant"
    grid: dict = field(default_factory=dict)


def _number(section, key, value, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
    if integer:
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
        return int(value)
    value = float(value)
    if math.isnan(value):
        raise ConfigError(f"{section}.{key} is NaN")
    return value


def _section(doc, name, required=False):
    sec = doc.get(name)
    if sec is None:
        if required:
            raise ConfigError(f"missing required section {name!r}")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(f"section {name!r} must be an object")
    unknown = set(sec) - _SECTIONS[name]
    if unknown:
        raise ConfigError(f"unknown key(s) in {name!r}: {', '.join(sorted(unknown))}")
    return sec


def _mass(sec):
    if "family" not in sec:
        raise ConfigError("mass.family is required")
    try:
        family = MassFamily.parse(sec["family"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if family is MassFamily.CUSTOM:
        raise ConfigError("the Custom family cannot be configured from JSON")
    kw = {}
    for key, attr in (("m0", "m0"), ("lambda", "lam"), ("beta", "beta"), ("kappa", "kappa")):
        if key in sec:
            kw[attr] = _number("mass", key, sec[key])
    if "role" in sec:
        try:
            kw["role"] = MassRole(str(sec["role"]).lower())
        except ValueError:
            raise ConfigError(f"mass.role must be 'effective' or 'newton', got {sec['role']!r}") from None
    try:
        return MassModel(family, **kw)
    except ValueError as exc:
        raise ConfigError(f"mass: {exc}") from None


def _system(mass, sec):
    kind = sec.get("potential", "pt")
    if kind not in ("pt", "zero"):
        raise ConfigError(f"system.potential must be 'pt' or 'zero', got {kind!r}")
    gamma = sec.get("gamma")
    if gamma is not None:
        gamma = _number("system", "gamma", gamma, integer=True)
    alpha = _number("system", "alpha", sec["alpha"]) if "alpha" in sec else None
    eps = _number("system", "epsilon", sec["epsilon"]) if "epsilon" in sec else None
    c = _number("system", "c", sec.get("c", 0.0))
    try:
        if kind == "pt":
            if None in (gamma, alpha, eps):
                raise ConfigError("a Poschl-Teller system needs system.gamma, alpha and epsilon")
            return SystemSpec.poschl_teller(mass, gamma, alpha, eps, c)
        return SystemSpec(mass, zero_potential(), gamma, alpha, eps, c)
    except (ValueError, DomainError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"system: {exc}") from None


def _integrator(sec):
    kw = {}
    if "method" in sec:
        try:
            kw["method"] = Method(sec["method"])
        except ValueError:
            names = ", ".join(m.value for m in Method)
            raise ConfigError(f"integrator.method must be one of {names}, got {sec['method']!r}") from None
    for key in ("abs_tol", "rel_tol", "max_step", "initial_step", "step", "boundary_margin"):
        if key in sec:
            kw[key] = _number("integrator", key, sec[key])
    if "max_steps" in sec:
        kw["max_steps"] = _number("integrator", "max_steps", sec["max_steps"], integer=True)
    try:
        return IntegratorConfig(**kw)
    except ValueError as exc:
        raise ConfigError(f"integrator: {exc}") from None


def parse_config(doc):
    """Validate a decoded JSON document and build a :class:`RunConfig`."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _TOP
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(sorted(unknown))}")
    mass = _mass(_section(doc, "mass", required=True))
    system = _system(mass, _section(doc, "system"))
    traj = _section(doc, "trajectory")
    kw = {}
    for key in ("E", "phi0", "t0", "t1", "periods", "x0", "v0"):
        if key in traj:
            kw[key] = _number("trajectory", key, traj[key])
    if "samples" in traj:
        kw["samples"] = _number("trajectory", "samples", traj["samples"], integer=True)
        if kw["samples"] < 2:
            raise ConfigError("trajectory.samples must be >= 2")
    if "periods" in kw and not kw["periods"] > 0:
        raise ConfigError("trajectory.periods must be > 0")
    picture = doc.get("picture", "invariant")
    if picture not in PICTURES:
        raise ConfigError(f"picture must be one of {', '.join(PICTURES)}, got {picture!r}")
    grid = dict(_section(doc, "grid"))
    for key in ("nx", "npi"):
        if key in grid:
            grid[key] = _number("grid", key, grid[key], integer=True)
    for key in ("fraction", "step"):
        if key in grid:
            grid[key] = _number("grid", key, grid[key])
    return RunConfig(system=system, integrator=_integrator(_section(doc, "integrator")),
                     picture=picture, grid=grid, **kw)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path!r}: {exc}") from None
    return parse_config(doc)
