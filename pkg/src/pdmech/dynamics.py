"""Newton/canonical ``(x, p)`` picture with thrust, and the conserved
``(x, pi)`` picture with the invariant Hamiltonian ``H``.

Notation used throughout:

* ``m``, ``m'``   Newton-picture mass and its derivative
* ``mm``          effective mass ``m**2/m0``
* ``V``           Newton-picture potential (force ``F = -V'``)
* ``Veff``        effective potential, ``Veff' = (m/m0) V'``
* ``p = m v``     Newton momentum, ``pi = mm v`` invariant-picture momentum
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .mass_models import (
    MassModel,
    domain_of,
    j_integral,
    quad,
)


@dataclass(frozen=True)
class PoschlTellerPotential:
    """Marker for the closed-form potential generated by the factorization:
    ``Veff = epsilon / cos^2(theta)`` (gamma=+1) or ``epsilon / cosh^2(theta)``
    (gamma=-1) with ``theta = sqrt(2 alpha^2 m0) int_c^x J``."""


@dataclass(frozen=True)
class CallablePotential:
    """User potential ``V(x)`` with its analytic derivative ``V'(x)``."""

    V: Callable[[float], float]
    dV: Callable[[float], float]


def zero_potential():
    return CallablePotential(lambda x: 0.0, lambda x: 0.0)


@dataclass(frozen=True)
class SystemSpec:
    mass: MassModel
    potential: object = field(default_factory=PoschlTellerPotential)
    gamma: Optional[int] = None
    alpha: Optional[float] = None
    epsilon: Optional[float] = None
    c: float = 0.0

    def __post_init__(self):
        if self.gamma is not None and self.gamma not in (1, -1):
            raise ValueError(f"gamma must be +1 or -1, got {self.gamma}")
        if self.alpha is not None and self.alpha == 0:
            raise ValueError("alpha must be non-zero")
        if self.gamma is not None and self.epsilon is not None:
            if self.gamma * self.epsilon <= 0:
                raise ValueError(
                    f"gamma={self.gamma:+d} requires "
                    f"{'epsilon > 0' if self.gamma > 0 else 'epsilon < 0'}, got epsilon={self.epsilon}")
        if self.is_pt and None in (self.gamma, self.alpha, self.epsilon):
            raise ValueError("a Poschl-Teller system needs gamma, alpha and epsilon")
        self.mass.check(self.c)

    @classmethod
    def poschl_teller(cls, mass, gamma, alpha, epsilon, c=0.0):
        return cls(mass, PoschlTellerPotential(), gamma, alpha, epsilon, c)

    @property
    def m0(self):
        return self.mass.m0

    @property
    def is_pt(self):
        return isinstance(self.potential, PoschlTellerPotential)

    @cached_property
    def domain(self):
        if self.is_pt:
            return domain_of(self.mass, self.gamma, self.alpha, self.epsilon, self.c)
        return self.mass.domain

    @property
    def scale(self):
        """``sqrt(2 alpha^2 m0)``: converts ``int J`` into the PT angle."""
        return abs(self.alpha) * math.sqrt(2.0 * self.m0)

    def check(self, x):
        self.mass.check(x)
        if self.is_pt:
            self.domain.check(x)

    def theta(self, x):
        """PT angle ``sqrt(2 alpha^2 m0) int_c^x J``."""
        self.check(x)
        th = self.scale * j_integral(self.mass, x, self.c)
        if self.gamma == 1 and abs(th) >= 0.5 * math.pi:
            raise DomainError(f"x={x!r} is at a singularity of the trigonometric potential", x=x)
        return th

    # -- effective potential ---------------------------------------------------

    def veff(self, x):
        if self.is_pt:
            th = self.theta(x)
            f = math.cos(th) if self.gamma == 1 else math.cosh(th)
            return self.epsilon / (f * f)
        self.check(x)
        m0, mass, dV = self.m0, self.mass, self.potential.dV
        return self.potential.V(self.c) + quad(lambda s: mass.mass(s) / m0 * dV(s), self.c, x,
                                               what="(m/m0) V'")

    def veff_prime(self, x):
        if self.is_pt:
            th = self.theta(x)
            dth = self.scale * self.mass.J(x)
            if self.gamma == 1:
                ct = math.cos(th)
                return 2.0 * self.epsilon * math.sin(th) / ct ** 3 * dth
            ch = math.cosh(th)
            return -2.0 * self.epsilon * math.sinh(th) / ch ** 3 * dth
        return self.mass.mass(x) / self.m0 * self.potential.dV(x)

    # -- Newton-picture potential ----------------------------------------------

    def v(self, x):
        if not self.is_pt:
            self.check(x)
            return self.potential.V(x)
        # anchored so that V(c) = Veff(c) = epsilon
        self.check(x)
        return self.epsilon + quad(self.v_prime, self.c, x, epsabs=1e-13, epsrel=1e-12,
                                   what="V'")

    def v_prime(self, x):
        if not self.is_pt:
            self.check(x)
            return self.potential.dV(x)
        return self.m0 / self.mass.mass(x) * self.veff_prime(x)


@dataclass(frozen=True)
class PhaseState:
    t: float
    x: float
    v: float
    p: float
    pi: float

    @classmethod
    def from_velocity(cls, mass, t, x, v):
        return cls(t, x, v, mass.mass(x) * v, mass.effective_mass(x) * v)

    @classmethod
    def from_momentum(cls, mass, t, x, p):
        return cls.from_velocity(mass, t, x, p / mass.mass(x))

    @classmethod
    def from_invariant_momentum(cls, mass, t, x, pi):
        return cls.from_velocity(mass, t, x, pi / mass.effective_mass(x))


# -- Newton / Lagrange / canonical picture ---------------------------------------

def newton_rhs(spec, x, v, t=0.0, force=None):
    """``(dx/dt, dv/dt) = (v, [F - m' v^2]/m)``; ``force(x, v, t)`` overrides
    ``F = -V'``."""
    m = spec.mass.mass(x)
    dm = spec.mass.mass_derivative(x)
    F = force(x, v, t) if force is not None else -spec.v_prime(x)
    return v, (F - dm * v * v) / m


def lagrangian_value(spec, x, v):
    return 0.5 * spec.mass.mass(x) * v * v - spec.v(x)


def hamiltonian_script_value(spec, x, p):
    return p * p / (2.0 * spec.mass.mass(x)) + spec.v(x)


def thrust_value(spec, x, p):
    m = spec.mass.mass(x)
    return -spec.mass.mass_derivative(x) / m * p * p / (2.0 * m)


def power_value(spec, x, v):
    return -0.5 * spec.mass.mass_derivative(x) * v ** 3


def canonical_rhs(spec, x, p, t=0.0):
    """``(dH/dp, -dH/dx + R)`` for ``H = p^2/2m + V`` with thrust ``R``."""
    m = spec.mass.mass(x)
    dm = spec.mass.mass_derivative(x)
    kinetic = p * p / (2.0 * m)
    minus_dHdx = dm / m * kinetic - spec.v_prime(x)
    return p / m, minus_dHdx + thrust_value(spec, x, p)


# -- conserved picture -----------------------------------------------------------

def effective_potential_value(spec, x):
    return spec.veff(x)


def invariant_H_value(spec, x, pi):
    return pi * pi / (2.0 * spec.mass.effective_mass(x)) + spec.veff(x)


def invariant_rhs(spec, x, pi, t=0.0):
    """Standard Hamilton equations of ``H = pi^2/2mm + Veff``."""
    mm = spec.mass.effective_mass(x)
    dmm = spec.mass.effective_mass_derivative(x)
    return pi / mm, pi * pi * dmm / (2.0 * mm * mm) - spec.veff_prime(x)


@dataclass(frozen=True)
class LagrangianReductionReport:
    max_deviation: float
    n_points: int
    max_abs_lagrangian: float


def standard_lagrangian_reduction(spec, xs=None, vs=None, n=100):
    """Compare ``L = 1/2 v^2 e^{I_b} - int c g e^{I_b}`` built from
    ``b = m'/m``, ``c = 1/m``, ``g = V'`` against :func:`lagrangian_value`.

    Both ``I_b`` and the potential integral are obtained by quadrature from the
    anchor ``spec.c``; ``I_b(c) = ln m(c)`` and the potential integral is
    anchored at ``V(c)``.
    """
    mass = spec.mass
    if xs is None:
        xs = _interior_grid(spec, n)
    if vs is None:
        vs = np.linspace(-2.0, 2.0, len(xs))
    c = spec.c
    ln_mc = math.log(mass.mass(c))
    v_c = spec.v(c)

    def integrand_ib(s):
        return mass.mass_derivative(s) / mass.mass(s)

    def e_ib(s):
        return math.exp(ln_mc + quad(integrand_ib, c, s, epsabs=1e-14, epsrel=1e-13, what="b"))

    worst, biggest = 0.0, 0.0
    for x, v in zip(xs, vs):
        weight = e_ib(x)
        pot = v_c + quad(lambda s: spec.v_prime(s) / mass.mass(s) * e_ib(s), c, x,
                         epsabs=1e-14, epsrel=1e-13, what="c g e^{I_b}")
        reduced = 0.5 * v * v * weight - pot
        direct = lagrangian_value(spec, x, v)
        worst = max(worst, abs(reduced - direct))
        biggest = max(biggest, abs(direct))
    return LagrangianReductionReport(worst, len(xs), biggest)


def _interior_grid(spec, n, fraction=0.8):
    """``n`` points spread over the central ``fraction`` of the domain
    (clipped to ``[-2, 2]`` around the anchor for unbounded domains)."""
    dom = spec.domain
    lo = max(dom.lower, spec.c - 2.0)
    hi = min(dom.upper, spec.c + 2.0)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo) * fraction
    return np.linspace(mid - half, mid + half, n)
