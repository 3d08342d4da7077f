"""Incomplete elliptic integral of the second kind, parameterized by ``beta``.

The integral is

    E_int(phi, beta) = int_0^{sin phi} sqrt((1 - beta t^2) / (1 - t^2)) dt

and ``beta`` enters directly (no imaginary modulus is ever formed for
``beta < 0``).  With ``t = sin u`` the endpoint singularity at ``t = 1``
disappears and the integrand becomes ``sqrt(1 - beta sin^2 u)`` on
``[0, arcsin(sin phi)]``.
"""

import math

import numpy as np
from scipy import integrate, special

from .errors import QuadratureError

EPSABS = 1e-13
EPSREL = 1e-13

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _reduced_angle(phi):
    # the upper limit only depends on sin(phi)
    return math.asin(max(-1.0, min(1.0, math.sin(phi))))


def _check_beta(u_max, beta):
    if beta > 0.0 and beta * math.sin(u_max) ** 2 >= 1.0:
        raise ValueError(f"beta*sin^2(phi) must be < 1, got beta={beta}")


def elliptic_e_int(phi, beta, epsabs=EPSABS, epsrel=EPSREL):
    """Adaptive (QUADPACK Gauss-Kronrod) evaluation of ``E_int(phi, beta)``."""
    u_max = _reduced_angle(phi)
    _check_beta(u_max, beta)
    if u_max == 0.0:
        return 0.0
    out = integrate.quad(
        lambda u: math.sqrt(1.0 - beta * math.sin(u) ** 2),
        0.0, u_max, epsabs=epsabs, epsrel=epsrel, limit=200, full_output=1,
    )
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > max(epsabs, epsrel * abs(value)) * 1e3:
        raise QuadratureError(
            f"E_int({phi}, {beta}) did not converge: achieved {abserr:.3e}",
            achieved=abserr,
        )
    return value


def elliptic_e_int_gauss(phi, beta, panels=8):
    """Composite fixed-order Gauss-Legendre rule for ``E_int(phi, beta)``.

    Independent of :func:`elliptic_e_int`; used to cross-check it.
    """
    u_max = _reduced_angle(phi)
    _check_beta(u_max, beta)
    edges = np.linspace(0.0, u_max, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        u = 0.5 * (a + b) + half * _GL_NODES
        total += half * float(np.dot(_GL_WEIGHTS, np.sqrt(1.0 - beta * np.sin(u) ** 2)))
    return total


def elliptic_e_int_fast(phi, beta):
    """Closed special-function evaluation through ``scipy.special.ellipeinc``.

    Used on hot paths (right-hand sides, root solves) where a quadrature per
    call would dominate the cost.  ``ellipeinc`` is undefined for
    ``beta > 1``, where this falls back to the quadrature.
    """
    if beta > 1.0:
        return elliptic_e_int(phi, beta)
    return float(special.ellipeinc(_reduced_angle(phi), beta))
