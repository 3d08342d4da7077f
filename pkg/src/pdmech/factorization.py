"""Ladder functions, Poschl-Teller potential and the deformed Poisson algebra.

For a PT system the invariant Hamiltonian factorizes as
``H = A+ A- + epsilon`` with

    A(+/-) = -/+ i f(x) pi / sqrt(2 mm) + g(x) sqrt(gamma H)

and the brackets close as ``i{A-, A+} = 2 alpha sqrt(gamma H)`` and
``i{H, A(+/-)} = +/- 2 alpha sqrt(gamma H) A(+/-)``.
"""

import cmath
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .dynamics import invariant_H_value
from .errors import RegimeError
from .mass_models import j_inverse, j_limit


def _require_pt(spec):
    if not spec.is_pt:
        raise ValueError("factorization needs a Poschl-Teller system")


def g_value(spec, x):
    _require_pt(spec)
    th = spec.theta(x)
    return math.sin(th) if spec.gamma == 1 else math.sinh(th)


def f_value(spec, x):
    _require_pt(spec)
    th = spec.theta(x)
    return math.cos(th) if spec.gamma == 1 else math.cosh(th)


def g_prime(spec, x):
    """Analytic ``g'(x) = sqrt(2 alpha^2 m0) J(x) f(x)``."""
    return spec.scale * spec.mass.J(x) * f_value(spec, x)


def pt_potential_value(spec, x):
    f = f_value(spec, x)
    return spec.epsilon / (f * f)


@dataclass(frozen=True)
class LadderValue:
    a_plus: complex
    a_minus: complex

    @property
    def conjugate(self):
        return self.a_plus == self.a_minus.conjugate()


def _sqrt_gamma_h(spec, H):
    gh = spec.gamma * H
    if gh < 0.0:
        raise RegimeError(f"gamma*H must be >= 0 (gamma={spec.gamma:+d}, H={H!r})")
    return math.sqrt(gh)


def ladder_values(spec, x, pi):
    _require_pt(spec)
    H = invariant_H_value(spec, x, pi)
    root = _sqrt_gamma_h(spec, H)
    th = spec.theta(x)
    if spec.gamma == 1:
        f, g = math.cos(th), math.sin(th)
    else:
        f, g = math.cosh(th), math.sinh(th)
    kin = f * pi / math.sqrt(2.0 * spec.mass.effective_mass(x))
    return LadderValue(complex(g * root, -kin), complex(g * root, kin))


def ladder_frequency(spec, E):
    """``2 |alpha| sqrt(gamma E)``: angular frequency of the Q-phases."""
    ge = spec.gamma * E
    if ge < 0.0:
        raise RegimeError(f"gamma*E must be >= 0 (gamma={spec.gamma:+d}, E={E!r})")
    return 2.0 * abs(spec.alpha) * math.sqrt(ge)


def invariant_Q_values(spec, x, pi, t, E):
    lad = ladder_values(spec, x, pi)
    w = ladder_frequency(spec, E)
    phase = cmath.exp(-1j * w * t)
    return phase * lad.a_plus, phase.conjugate() * lad.a_minus


def check_energy_regime(E, epsilon, gamma):
    """Raise :class:`RegimeError` naming the violated inequality."""
    if gamma == 1:
        if not epsilon > 0:
            raise RegimeError(f"gamma=+1 requires epsilon > 0, got {epsilon}")
        if not E >= epsilon:
            raise RegimeError(f"gamma=+1 requires E >= epsilon > 0, got E={E}, epsilon={epsilon}")
    elif gamma == -1:
        if not epsilon < 0:
            raise RegimeError(f"gamma=-1 requires epsilon < 0, got {epsilon}")
        if not E >= epsilon:
            raise RegimeError(f"gamma=-1 requires E >= epsilon, got E={E}, epsilon={epsilon}")
        if not abs(E) <= abs(epsilon) or E >= 0:
            raise RegimeError(f"gamma=-1 requires |E| <= |epsilon| with E < 0, "
                              f"got E={E}, epsilon={epsilon}")
    else:
        raise ValueError(f"gamma must be +1 or -1, got {gamma}")


def q_polar(E, epsilon, phi0, gamma):
    check_energy_regime(E, epsilon, gamma)
    r = math.sqrt(E - epsilon)
    return r * cmath.exp(1j * phi0), r * cmath.exp(-1j * phi0)


# -- brackets ------------------------------------------------------------------

def _steps(x, pi, step):
    return step * max(1.0, abs(x)), step * max(1.0, abs(pi))


def _partials(fun, x, pi, hx, hp, richardson):
    def central(h, k):
        dx = (fun(x + h, pi) - fun(x - h, pi)) / (2.0 * h)
        dp = (fun(x, pi + k) - fun(x, pi - k)) / (2.0 * k)
        return dx, dp

    dx, dp = central(hx, hp)
    if richardson:
        dx2, dp2 = central(0.5 * hx, 0.5 * hp)
        dx = (4.0 * dx2 - dx) / 3.0
        dp = (4.0 * dp2 - dp) / 3.0
    return dx, dp


def poisson_bracket(fa, fb, x, pi, step=1e-6, richardson=False):
    """Central-difference ``{fa, fb} = fa_x fb_pi - fa_pi fb_x``.

    ``fa`` and ``fb`` are callables of ``(x, pi)``; complex values are
    differenced component-wise.  The step is scaled by ``max(1, |x|)`` and
    ``max(1, |pi|)``.
    """
    hx, hp = _steps(x, pi, step)
    ax, ap = _partials(fa, x, pi, hx, hp, richardson)
    bx, bp = _partials(fb, x, pi, hx, hp, richardson)
    return ax * bp - ap * bx


@dataclass
class AlgebraReport:
    max_factorization_residual: float
    max_bracket1_residual: float
    max_bracket2_residual: float
    grid: dict
    step: float
    richardson: bool
    n_points: int
    n_skipped: int

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @property
    def max_residual(self):
        return max(self.max_bracket1_residual, self.max_bracket2_residual,
                   self.max_factorization_residual)


def default_grid(spec, nx=32, npi=32, fraction=0.8, theta_max=2.0):
    """``nx * npi`` admissible ``(x, pi)`` points.

    Positions are spaced evenly in the PT angle over ``fraction`` of its
    range (capped at ``theta_max`` for the hyperbolic branch); momenta span
    ``fraction`` of the band on which ``gamma H > 0`` (or a kinetic energy
    up to ``|Veff|`` when ``gamma = +1``).
    """
    _require_pt(spec)
    dom = spec.domain
    s = spec.scale
    th_lo, th_hi = -theta_max, theta_max
    if spec.gamma == 1:
        th_lo, th_hi = -0.5 * math.pi, 0.5 * math.pi
    # clip to the mass domain
    th_lo = max(th_lo, s * j_limit(spec.mass, -1, spec.c))
    th_hi = min(th_hi, s * j_limit(spec.mass, +1, spec.c))
    thetas = np.linspace(fraction * th_lo, fraction * th_hi, nx)
    xs = [j_inverse(spec.mass, th / s, spec.c) for th in thetas]
    fr = np.linspace(-fraction, fraction, npi)
    points = []
    for x in xs:
        if not dom.contains(x):
            continue
        band = math.sqrt(2.0 * spec.mass.effective_mass(x) * abs(spec.veff(x)))
        points.extend((x, r * band) for r in fr)
    return points


def _ladder_and_h(spec, x, pi):
    # one evaluation of (A+, A-, H); the three share theta and mm
    mm = spec.mass.effective_mass(x)
    th = spec.theta(x)
    if spec.gamma == 1:
        f, g = math.cos(th), math.sin(th)
    else:
        f, g = math.cosh(th), math.sinh(th)
    H = pi * pi / (2.0 * mm) + spec.epsilon / (f * f)
    root = _sqrt_gamma_h(spec, H)
    kin = f * pi / math.sqrt(2.0 * mm)
    return np.array([complex(g * root, -kin), complex(g * root, kin), H])


def _residuals(spec, x, pi, step, richardson):
    H = invariant_H_value(spec, x, pi)
    w = 2.0 * abs(spec.alpha) * math.sqrt(spec.gamma * H)
    lad = ladder_values(spec, x, pi)
    hx, hp = _steps(x, pi, step)
    dx, dp = _partials(lambda a, b: _ladder_and_h(spec, a, b), x, pi, hx, hp, richardson)
    ap_x, am_x, h_x = dx
    ap_p, am_p, h_p = dp

    fac = abs(lad.a_plus * lad.a_minus + spec.epsilon - H)
    b1 = abs(1j * (am_x * ap_p - am_p * ap_x) - w)
    b2p = abs(1j * (h_x * ap_p - h_p * ap_x) - w * lad.a_plus)
    b2m = abs(1j * (h_x * am_p - h_p * am_x) + w * lad.a_minus)
    return fac, b1, max(b2p, b2m)


def verify_algebra(spec, grid=None, step=1e-6, richardson=True, degenerate_tol=1e-10):
    """Maximum residuals of the factorization identity and both bracket
    relations over ``grid`` (defaults to :func:`default_grid`)."""
    _require_pt(spec)
    if grid is None:
        grid = default_grid(spec)
        grid_desc = {"kind": "default", "nx": 32, "npi": 32}
    else:
        grid = list(grid)
        grid_desc = {"kind": "explicit"}
    fac = b1 = b2 = 0.0
    used = skipped = 0
    for x, pi in grid:
        H = invariant_H_value(spec, x, pi)
        if spec.gamma * H <= degenerate_tol * max(1.0, abs(spec.epsilon)):
            skipped += 1
            continue
        r = _residuals(spec, x, pi, step, richardson)
        fac, b1, b2 = max(fac, r[0]), max(b1, r[1]), max(b2, r[2])
        used += 1
    grid_desc["points"] = used + skipped
    return AlgebraReport(fac, b1, b2, grid_desc, step, richardson, used, skipped)
