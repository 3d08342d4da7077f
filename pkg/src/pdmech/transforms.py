"""Point transformations to an equivalent constant-mass system, and the
constant-mass path-equivalence force map.

Two maps are provided:

* ``point_transform``: ``(x, p) -> (Q, P)`` with ``Q = int_c^x sqrt(m/m0)``
  and ``P = sqrt(m0/m) p``.  ``m`` is the Newton-picture mass.  The target
  system keeps a thrust term, so only the kinematics ``dQ/dt = P/m0`` carry
  over.
* ``tilde_transform``: ``(x, pi) -> (Qt, Pt)`` with ``Qt = int_c^x J`` and
  ``Pt = pi / J``.  It carries ``H`` into ``Pt^2/2m0 + Veff(x(Qt))``.
"""

import math

from .mass_models import j_integral, quad


def point_transform(spec, x, p):
    mass = spec.mass
    m0 = mass.m0
    spec.check(x)
    Q = quad(lambda s: math.sqrt(mass.mass(s) / m0), spec.c, x, what="sqrt(m/m0)")
    return Q, math.sqrt(m0 / mass.mass(x)) * p


def tilde_transform(spec, x, pi):
    spec.check(x)
    return j_integral(spec.mass, x, spec.c), pi / spec.mass.J(x)


def tilde_potential(spec, Qt):
    """PT potential written in the tilde coordinate:
    ``eps / cos^2(s Qt)`` (gamma=+1) or ``eps / cosh^2(s Qt)``."""
    th = spec.scale * Qt
    if spec.gamma == 1:
        if abs(th) >= 0.5 * math.pi:
            raise ValueError(f"Qt={Qt!r} is at a singularity of the trigonometric potential")
        f = math.cos(th)
    else:
        f = math.cosh(th)
    return spec.epsilon / (f * f)


def constant_mass_K(spec, Q, P, V=None):
    """``P^2/(2 m0) + V(Q)``.  ``V`` defaults to :func:`tilde_potential`,
    which requires a Poschl-Teller system."""
    if V is None:
        if not spec.is_pt:
            raise ValueError("default potential needs a Poschl-Teller system; pass V")
        pot = tilde_potential(spec, Q)
    else:
        pot = V(Q)
    return P * P / (2.0 * spec.m0) + pot


def lanczos_equivalent_force(F, v, E0, m0, dV0dx):
    """Force ``F0 = -(2 E0/(m0 v^2)) F + 2 dV0/dx`` on the constant mass ``m0``
    that traces the same path as ``F`` acting on ``m(x) = -m0 [1 - V0(x)/E0]``."""
    if v == 0:
        raise ZeroDivisionError("the force map is singular at v = 0")
    if E0 == 0:
        raise ZeroDivisionError("E0 must be non-zero")
    return -(2.0 * E0 / (m0 * v * v)) * F + 2.0 * dV0dx
