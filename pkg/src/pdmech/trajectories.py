"""Exact phase trajectories ``(x(t), pi(t))`` of the Poschl-Teller systems.

Along a trajectory of energy ``E`` the ladder invariants fix

    g(x(t)) = sqrt((E - eps)/(gamma E)) cos(phi0 + w t)
    pi(t)   = -sqrt(2 (E - eps) mm(x)) / f(x) * sin(phi0 + w t)

with ``w = 2 |alpha| sqrt(gamma E)``.  Singular, regular, exponential and
constant masses invert ``g`` in closed form; every other model goes through
a bracketed root solve (:func:`invert_g`).
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dynamics import PhaseState, SystemSpec, hamiltonian_script_value, invariant_H_value
from .errors import DomainError, RegimeError
from .factorization import check_energy_regime, f_value, g_value, ladder_frequency, ladder_values
from .mass_models import MassFamily, MassRole, _solve_monotone, j_limit
from .special import elliptic_e_int  # noqa: F401  (re-exported)


@dataclass(frozen=True)
class TrajectorySpec:
    system: SystemSpec
    E: float
    phi0: float = 0.0

    def __post_init__(self):
        if not self.system.is_pt:
            raise ValueError("analytic trajectories need a Poschl-Teller system")
        check_energy_regime(self.E, self.system.epsilon, self.system.gamma)

    @property
    def amplitude(self):
        """Turning value ``sqrt((E - eps)/(gamma E))`` of ``|g|``."""
        s = self.system
        return math.sqrt((self.E - s.epsilon) / (s.gamma * self.E))

    @property
    def frequency(self):
        return ladder_frequency(self.system, self.E)

    @property
    def period(self):
        return 2.0 * math.pi / self.frequency

    def phase(self, t):
        return self.phi0 + self.frequency * t


def oscillation_period(spec, E):
    """``pi / (|alpha| sqrt(gamma E))``."""
    if spec.gamma * E <= 0:
        raise RegimeError(f"gamma*E must be > 0 for a periodic orbit (gamma={spec.gamma:+d}, E={E})")
    return 2.0 * math.pi / ladder_frequency(spec, E)


def _angle_of(spec, target):
    if spec.gamma == 1:
        if not -1.0 <= target <= 1.0:
            raise RegimeError(f"g-target {target!r} outside [-1, 1]")
        return math.asin(target)
    return math.asinh(target)


def g_range(spec):
    """Open range ``(g_lo, g_hi)`` of ``g`` over the potential's domain."""
    s = spec.scale
    lo = s * j_limit(spec.mass, -1, spec.c)
    hi = s * j_limit(spec.mass, +1, spec.c)
    if spec.gamma == 1:
        lo, hi = max(lo, -0.5 * math.pi), min(hi, 0.5 * math.pi)
        return math.sin(lo), math.sin(hi)
    return math.sinh(lo), math.sinh(hi)


def invert_g(spec, target):
    """Unique ``x`` in the domain with ``g(x) = target``.

    ``g`` is strictly increasing (``J > 0``), so the root is bracketed by
    walking out from the anchor toward the domain edge and refined with
    Brent's method.
    """
    lo, hi = g_range(spec)
    if not lo < target < hi:
        raise DomainError(f"g-target {target!r} outside the attainable range ({lo}, {hi})")
    if target == 0.0:
        return spec.c
    upward = target > 0.0

    def residual(x):
        try:
            return g_value(spec, x) - target
        except DomainError:
            # beyond a trigonometric singularity: g has passed its extreme
            return 1.0 if upward else -1.0

    return _solve_monotone(residual, spec.domain, spec.c, upward)


def explicit_position(spec, target):
    """Closed-form ``x`` with ``g(x) = target``, or ``None`` when the mass model
    has no elementary inverse.

    Raises :class:`RegimeError` when the closed form leaves its range (the
    orbit is not confined)."""
    mass = spec.mass
    if mass.role is not MassRole.EFFECTIVE:
        return None
    fam = mass.family
    if fam not in (MassFamily.SINGULAR, MassFamily.REGULAR, MassFamily.EXPONENTIAL,
                   MassFamily.CONSTANT):
        return None
    y = _angle_of(spec, target) / spec.scale
    c = spec.c
    if fam is MassFamily.CONSTANT:
        return c + y
    if fam is MassFamily.SINGULAR:
        lam = mass.lam
        return ((1.0 + lam * c) * math.exp(lam * y) - 1.0) / lam
    if fam is MassFamily.REGULAR:
        lam = mass.lam
        return math.sinh(lam * y + math.asinh(lam * c)) / lam
    k = mass.kappa
    arg = 0.25 * k * y + math.exp(0.25 * k * c)
    if arg <= 0.0:
        raise RegimeError("exponential-mass orbit is not confined (logarithm argument <= 0)")
    return 4.0 / k * math.log(arg)


def is_confined(tspec):
    """True when both turning values ``+/-A`` of ``g`` are attained inside the
    domain, i.e. the closed formulas describe a bounded orbit."""
    lo, hi = g_range(tspec.system)
    A = tspec.amplitude
    return lo < -A and A < hi


def analytic_state(tspec, t, method="auto"):
    """Phase-space point on the exact trajectory at time ``t``.

    ``method="auto"`` uses the closed-form inverse of ``g`` when available,
    ``"invert"`` always uses :func:`invert_g`.
    """
    spec = tspec.system
    ph = tspec.phase(t)
    target = tspec.amplitude * math.cos(ph)
    x = explicit_position(spec, target) if method == "auto" else None
    if x is None:
        x = invert_g(spec, target)
    spec.check(x)
    mm = spec.mass.effective_mass(x)
    pi = -math.sqrt(2.0 * (tspec.E - spec.epsilon) * mm) / f_value(spec, x) * math.sin(ph)
    return PhaseState.from_invariant_momentum(spec.mass, t, x, pi)


def phase_from_state(spec, x0, pi0):
    """``(E, phi0)`` reproducing the state ``(x0, pi0)`` at ``t = 0``."""
    E = invariant_H_value(spec, x0, pi0)
    check_energy_regime(E, spec.epsilon, spec.gamma)
    if E == spec.epsilon:
        return E, 0.0
    A = math.sqrt((E - spec.epsilon) / (spec.gamma * E))
    cos_phi = g_value(spec, x0) / A
    sin_phi = -pi0 * f_value(spec, x0) / math.sqrt(
        2.0 * (E - spec.epsilon) * spec.mass.effective_mass(x0))
    return E, math.atan2(sin_phi, cos_phi)


# -- sampled trajectories ---------------------------------------------------------

COLUMNS = ("t", "x", "v", "p", "pi", "H_script", "H_inv", "Qabs2")


@dataclass
class Trajectory:
    """Column-oriented samples ``t, x, v, p, pi`` with diagnostics.

    ``H_script`` is the (non-conserved) Newton-picture Hamiltonian, ``H_inv``
    the invariant ``H`` and ``Qabs2`` the common value of ``|Q+/-|^2``
    (NaN where unavailable).
    """

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    p: np.ndarray
    pi: np.ndarray
    H_script: np.ndarray
    H_inv: np.ndarray
    Qabs2: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("trajectory times must be strictly increasing")

    def __len__(self):
        return len(self.t)

    def state(self, i):
        return PhaseState(float(self.t[i]), float(self.x[i]), float(self.v[i]),
                          float(self.p[i]), float(self.pi[i]))

    @property
    def states(self):
        return [self.state(i) for i in range(len(self))]

    def columns(self):
        return {name: getattr(self, name) for name in COLUMNS}


def _nan_if_fails(fun, *args):
    try:
        return fun(*args)
    except (DomainError, RegimeError, ValueError):
        return math.nan


def build_trajectory(spec, states, meta=None, script=True):
    """Attach ``H_script``, ``H_inv`` and ``|Q|^2`` to a list of states."""
    n = len(states)
    cols = {name: np.empty(n) for name in COLUMNS}
    for i, s in enumerate(states):
        cols["t"][i], cols["x"][i], cols["v"][i] = s.t, s.x, s.v
        cols["p"][i], cols["pi"][i] = s.p, s.pi
        cols["H_inv"][i] = _nan_if_fails(invariant_H_value, spec, s.x, s.pi)
        cols["H_script"][i] = (_nan_if_fails(hamiltonian_script_value, spec, s.x, s.p)
                               if script else math.nan)
        if spec.is_pt:
            cols["Qabs2"][i] = _nan_if_fails(lambda a, b: abs(ladder_values(spec, a, b).a_plus) ** 2,
                                             s.x, s.pi)
        else:
            cols["Qabs2"][i] = math.nan
    return Trajectory(**cols, meta=dict(meta or {}))


def sample_trajectory(tspec, t0, t1, n, method="auto", script=True, integrator_config=None):
    """``n`` evenly spaced samples on ``[t0, t1]``.

    Unconfined orbits (scattering regimes) have no closed form; they are
    integrated numerically from the anchor ``x = c`` with the momentum sign
    of ``-sin(phi0)``.
    """
    if n < 2 or not t0 < t1:
        raise ValueError("need n >= 2 and t0 < t1")
    ts = np.linspace(t0, t1, n)
    spec = tspec.system
    meta = {"E": tspec.E, "phi0": tspec.phi0, "period": tspec.period, "source": "analytic"}
    if tspec.E == spec.epsilon:
        x, pi = spec.c, 0.0
        states = [PhaseState.from_invariant_momentum(spec.mass, float(t), x, pi) for t in ts]
        return build_trajectory(spec, states, meta, script)
    if is_confined(tspec):
        states = [analytic_state(tspec, float(t), method) for t in ts]
        return build_trajectory(spec, states, meta, script)

    from .integrator import IntegratorConfig, integrate_picture

    mm = spec.mass.effective_mass(spec.c)
    sign = 1.0 if math.sin(tspec.phi0) < 0 else -1.0
    pi0 = sign * math.sqrt(2.0 * mm * (tspec.E - spec.epsilon))
    start = PhaseState.from_invariant_momentum(spec.mass, t0, spec.c, pi0)
    traj = integrate_picture(spec, "invariant", start, t0, t1,
                             integrator_config or IntegratorConfig(), t_eval=ts, script=script)
    traj.meta.update(meta, source="numeric")
    return traj
