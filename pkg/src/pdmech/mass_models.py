"""Mass families, their derivatives, validity domains and the ``J`` quadrature.

Every family is given by a closed-form profile ``F(x)`` (in mass units).  A
model also records which mass the profile designates:

* ``MassRole.EFFECTIVE`` (default): ``F`` is the effective mass ``mm`` of the
  conserved ``(x, pi)`` picture, so ``J = sqrt(F/m0)`` and the Newton-picture
  mass is ``m = sqrt(m0 * F)``.  This is the reading under which the
  Poschl-Teller potentials and trajectories of the four families take their
  familiar closed forms.
* ``MassRole.NEWTON``: ``F`` is the Newton-picture mass ``m`` and the
  effective mass follows as ``mm = m**2 / m0``.

Either way ``mass_at`` returns ``m``, ``effective_mass_at`` returns ``mm`` and
``j_integral`` integrates ``J = sqrt(mm/m0)``.
"""

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from scipy import integrate, optimize

from .errors import DomainError, QuadratureError, RootFindingError
from .special import elliptic_e_int, elliptic_e_int_fast

QUAD_EPSABS = 1e-12
QUAD_EPSREL = 1e-10


class MassFamily(enum.Enum):
    DOUBLY_SINGULAR = "DoublySingular"
    SINGULAR = "Singular"
    REGULAR = "Regular"
    EXPONENTIAL = "Exponential"
    CONSTANT = "Constant"
    CUSTOM = "Custom"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).replace("_", "").replace("-", "").lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown mass family {name!r}")


class MassRole(enum.Enum):
    EFFECTIVE = "effective"
    NEWTON = "newton"


@dataclass(frozen=True)
class DomainInterval:
    lower: float = -math.inf
    upper: float = math.inf
    lower_closed: bool = False
    upper_closed: bool = False

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"empty interval: lower={self.lower} upper={self.upper}")

    def contains(self, x):
        if x < self.lower or (x == self.lower and not self.lower_closed):
            return False
        if x > self.upper or (x == self.upper and not self.upper_closed):
            return False
        return True

    def check(self, x, what="x"):
        """Raise :class:`DomainError` naming the violated bound."""
        if math.isnan(x):
            raise DomainError(f"{what} is NaN", x=x)
        if x < self.lower or (x == self.lower and not self.lower_closed):
            raise DomainError(f"{what}={x!r} is outside the domain: lower bound {self.lower!r}",
                              x=x, bound=self.lower)
        if x > self.upper or (x == self.upper and not self.upper_closed):
            raise DomainError(f"{what}={x!r} is outside the domain: upper bound {self.upper!r}",
                              x=x, bound=self.upper)

    def distance_to_boundary(self, x):
        return min(x - self.lower, self.upper - x)

    @property
    def is_bounded(self):
        return math.isfinite(self.lower) and math.isfinite(self.upper)

    def __str__(self):
        lo = "[" if self.lower_closed else "("
        hi = "]" if self.upper_closed else ")"
        return f"{lo}{self.lower}, {self.upper}{hi}"


@dataclass(frozen=True)
class MassModel:
    """A mass family with its parameters.

    ``custom_mass``/``custom_derivative`` are only used by the ``CUSTOM``
    family, which also needs ``custom_domain``.
    """

    family: MassFamily
    m0: float = 1.0
    lam: Optional[float] = None
    beta: Optional[float] = None
    kappa: Optional[float] = None
    role: MassRole = MassRole.EFFECTIVE
    custom_mass: Optional[Callable[[float], float]] = None
    custom_derivative: Optional[Callable[[float], float]] = None
    custom_domain: Optional[DomainInterval] = None

    def __post_init__(self):
        object.__setattr__(self, "family", MassFamily.parse(self.family))
        if isinstance(self.role, str):
            object.__setattr__(self, "role", MassRole(self.role.lower()))
        fam = self.family
        if not self.m0 > 0:
            raise ValueError(f"m0 must be > 0, got {self.m0}")
        if fam in (MassFamily.DOUBLY_SINGULAR, MassFamily.SINGULAR, MassFamily.REGULAR):
            if self.lam is None or not self.lam > 0:
                raise ValueError(f"{fam.value} mass needs lambda > 0, got {self.lam}")
        if fam is MassFamily.DOUBLY_SINGULAR and (self.beta is None or not self.beta < 0):
            raise ValueError(f"DoublySingular mass needs beta < 0, got {self.beta}")
        if fam is MassFamily.EXPONENTIAL and (self.kappa is None or not self.kappa < 0):
            raise ValueError(f"Exponential mass needs kappa < 0, got {self.kappa}")
        if fam is MassFamily.CUSTOM:
            if self.custom_mass is None or self.custom_derivative is None:
                raise ValueError("Custom mass needs both m(x) and an analytic m'(x)")
            if self.custom_domain is None:
                object.__setattr__(self, "custom_domain", DomainInterval())

    # -- constructors ---------------------------------------------------------

    @classmethod
    def doubly_singular(cls, m0=1.0, lam=1.0, beta=-1.0, role=MassRole.EFFECTIVE):
        return cls(MassFamily.DOUBLY_SINGULAR, m0=m0, lam=lam, beta=beta, role=role)

    @classmethod
    def singular(cls, m0=1.0, lam=1.0, role=MassRole.EFFECTIVE):
        return cls(MassFamily.SINGULAR, m0=m0, lam=lam, role=role)

    @classmethod
    def regular(cls, m0=1.0, lam=1.0, role=MassRole.EFFECTIVE):
        return cls(MassFamily.REGULAR, m0=m0, lam=lam, role=role)

    @classmethod
    def exponential(cls, m0=1.0, kappa=-1.0, role=MassRole.EFFECTIVE):
        return cls(MassFamily.EXPONENTIAL, m0=m0, kappa=kappa, role=role)

    @classmethod
    def constant(cls, m0=1.0):
        return cls(MassFamily.CONSTANT, m0=m0)

    @classmethod
    def custom(cls, mass, derivative, domain=None, m0=1.0, role=MassRole.EFFECTIVE):
        return cls(MassFamily.CUSTOM, m0=m0, role=role, custom_mass=mass,
                   custom_derivative=derivative, custom_domain=domain)

    # -- domain ---------------------------------------------------------------

    @property
    def domain(self):
        """Interval on which the profile is finite and positive."""
        fam = self.family
        if fam is MassFamily.DOUBLY_SINGULAR:
            return DomainInterval(-1.0 / self.lam, 1.0 / self.lam)
        if fam is MassFamily.SINGULAR:
            return DomainInterval(-1.0 / self.lam, math.inf)
        if fam is MassFamily.CUSTOM:
            return self.custom_domain
        return DomainInterval()

    def check(self, x):
        self.domain.check(x)

    # -- the profile F(x) -------------------------------------------------

    def profile(self, x):
        self.check(x)
        fam = self.family
        if fam is MassFamily.DOUBLY_SINGULAR:
            u2 = (self.lam * x) ** 2
            return self.m0 * (1.0 - self.beta * u2) / (1.0 - u2)
        if fam is MassFamily.SINGULAR:
            return self.m0 / (1.0 + self.lam * x) ** 2
        if fam is MassFamily.REGULAR:
            return self.m0 / (1.0 + (self.lam * x) ** 2)
        if fam is MassFamily.EXPONENTIAL:
            return self.m0 * math.exp(0.5 * self.kappa * x)
        if fam is MassFamily.CONSTANT:
            return self.m0
        return float(self.custom_mass(x))

    def profile_derivative(self, x):
        self.check(x)
        fam = self.family
        if fam is MassFamily.DOUBLY_SINGULAR:
            u = self.lam * x
            return self.m0 * self.lam * 2.0 * u * (1.0 - self.beta) / (1.0 - u * u) ** 2
        if fam is MassFamily.SINGULAR:
            return -2.0 * self.lam * self.m0 / (1.0 + self.lam * x) ** 3
        if fam is MassFamily.REGULAR:
            u = self.lam * x
            return -2.0 * self.lam * u * self.m0 / (1.0 + u * u) ** 2
        if fam is MassFamily.EXPONENTIAL:
            return 0.5 * self.kappa * self.m0 * math.exp(0.5 * self.kappa * x)
        if fam is MassFamily.CONSTANT:
            return 0.0
        return float(self.custom_derivative(x))

    # -- the two masses -------------------------------------------------------

    def mass(self, x):
        """Newton-picture mass ``m(x)``."""
        q = self.profile(x)
        if self.role is MassRole.NEWTON:
            return q
        return math.sqrt(self.m0 * q)

    def mass_derivative(self, x):
        dq = self.profile_derivative(x)
        if self.role is MassRole.NEWTON:
            return dq
        return self.m0 * dq / (2.0 * math.sqrt(self.m0 * self.profile(x)))

    def effective_mass(self, x):
        """Effective mass ``mm(x) = m(x)**2 / m0`` of the conserved picture."""
        q = self.profile(x)
        if self.role is MassRole.EFFECTIVE:
            return q
        return q * q / self.m0

    def effective_mass_derivative(self, x):
        dq = self.profile_derivative(x)
        if self.role is MassRole.EFFECTIVE:
            return dq
        return 2.0 * self.profile(x) * dq / self.m0

    def J(self, x):
        """Integrand ``sqrt(mm/m0)`` of the factorization quadrature."""
        q = self.profile(x)
        if self.role is MassRole.EFFECTIVE:
            return math.sqrt(q / self.m0)
        return q / self.m0

    # -- antiderivative of J from 0 ------------------------------------------

    @property
    def has_closed_form(self):
        return self.family is not MassFamily.CUSTOM

    def _antiderivative(self, x):
        """Closed-form ``int_0^x J``.  Accepts the (possibly infinite) domain
        edges and returns the corresponding limit."""
        fam, lam = self.family, self.lam
        eff = self.role is MassRole.EFFECTIVE
        if fam is MassFamily.CONSTANT:
            return x
        if fam is MassFamily.SINGULAR:
            w = 1.0 + lam * x
            if w <= 0.0:
                return -math.inf
            if eff:
                return math.log(w) / lam
            return 1.0 / lam if math.isinf(x) else x / w
        if fam is MassFamily.REGULAR:
            return math.asinh(lam * x) / lam if eff else math.atan(lam * x) / lam
        if fam is MassFamily.EXPONENTIAL:
            k = self.kappa
            if eff:
                return 4.0 / k * (math.exp(0.25 * k * x) - 1.0)
            return 2.0 / k * (math.exp(0.5 * k * x) - 1.0)
        if fam is MassFamily.DOUBLY_SINGULAR:
            u = max(-1.0, min(1.0, lam * x))
            if eff:
                return elliptic_e_int_fast(math.asin(u), self.beta) / lam
            if abs(u) == 1.0:
                return math.copysign(math.inf, u)
            return self.beta * x + (1.0 - self.beta) * math.atanh(u) / lam
        raise NotImplementedError(fam)

    def _antiderivative_inverse(self, y):
        """Inverse of :meth:`_antiderivative` where it is elementary, else None."""
        fam, lam = self.family, self.lam
        eff = self.role is MassRole.EFFECTIVE
        if fam is MassFamily.CONSTANT:
            return y
        if fam is MassFamily.SINGULAR:
            if eff:
                return math.expm1(lam * y) / lam
            return y / (1.0 - lam * y) if lam * y < 1.0 else None
        if fam is MassFamily.REGULAR:
            if eff:
                return math.sinh(lam * y) / lam
            return math.tan(lam * y) / lam if abs(lam * y) < 0.5 * math.pi else None
        if fam is MassFamily.EXPONENTIAL:
            k = self.kappa
            w = 1.0 + (0.25 if eff else 0.5) * k * y
            if w <= 0.0:
                return None
            return (4.0 if eff else 2.0) / k * math.log(w)
        return None


def _quad(fun, a, b, epsabs, epsrel, what):
    if a == b:
        return 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    out = integrate.quad(fun, a, b, epsabs=epsabs, epsrel=epsrel, limit=200, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > 1e3 * max(epsabs, epsrel * abs(value)):
        raise QuadratureError(f"quadrature of {what} on [{a}, {b}] did not converge: "
                              f"achieved {abserr:.3e}", achieved=abserr)
    return sign * value


def quad(fun, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, what="integrand"):
    """Signed adaptive quadrature ``int_a^b fun`` with convergence checking."""
    return _quad(fun, a, b, epsabs, epsrel, what)


# -- module-level operations ---------------------------------------------------

def mass_at(model, x):
    return model.mass(x)


def mass_derivative_at(model, x):
    return model.mass_derivative(x)


def effective_mass_at(model, x):
    return model.effective_mass(x)


def j_integral(model, x, c=0.0, method="auto", epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL):
    """Signed quadrature ``int_c^x J(t) dt`` with ``J = sqrt(mm/m0)``.

    ``method="auto"`` uses the family's closed form when one exists;
    ``method="quad"`` forces adaptive quadrature (the elliptic integrand with
    the ``t = sin u`` substitution for the doubly singular family).
    """
    model.check(x)
    model.check(c)
    if x == c:
        return 0.0
    if method == "auto" and model.has_closed_form:
        return model._antiderivative(x) - model._antiderivative(c)
    if method not in ("auto", "quad"):
        raise ValueError(f"unknown method {method!r}")
    if model.family is MassFamily.DOUBLY_SINGULAR and model.role is MassRole.EFFECTIVE:
        lam, beta = model.lam, model.beta
        return (elliptic_e_int(math.asin(lam * x), beta, epsabs, epsrel)
                - elliptic_e_int(math.asin(lam * c), beta, epsabs, epsrel)) / lam
    return _quad(model.J, c, x, epsabs, epsrel, "J")


def j_limit(model, side, c=0.0):
    """``int_c^edge J`` at the lower (``side=-1``) or upper (``side=+1``) edge
    of the mass domain; may be infinite."""
    dom = model.domain
    edge = dom.upper if side > 0 else dom.lower
    if model.has_closed_form:
        return model._antiderivative(edge) - model._antiderivative(c)
    # custom profile: quadrature up to the edge (quad accepts infinite limits)
    try:
        return _quad(model.J, c, edge, QUAD_EPSABS, QUAD_EPSREL, "J")
    except QuadratureError:
        return math.copysign(math.inf, side)


def j_inverse(model, y, c=0.0):
    """Position ``x`` with ``int_c^x J = y``.

    Raises :class:`DomainError` when ``y`` lies outside the range of the
    quadrature over the mass domain.
    """
    if y == 0.0:
        return c
    lo_val, hi_val = j_limit(model, -1, c), j_limit(model, +1, c)
    if not lo_val < y < hi_val:
        raise DomainError(f"quadrature value {y!r} outside attainable range ({lo_val}, {hi_val})")
    if model.has_closed_form:
        x = model._antiderivative_inverse(y + model._antiderivative(c))
        if x is not None:
            return x
    return _solve_monotone(lambda s: j_integral(model, s, c) - y, model.domain, c, y > 0)


def _solve_monotone(fun, domain, start, upward):
    """Root of an increasing ``fun`` with ``fun(start) < 0`` (``upward``) or
    ``> 0``; the far end of the bracket is expanded toward the domain edge."""
    a = start
    edge = domain.upper if upward else domain.lower
    step = 1.0
    b = None
    for _ in range(200):
        cand = start + step if upward else start - step
        if math.isfinite(edge) and (cand >= edge if upward else cand <= edge):
            # approach a finite edge geometrically
            cand = a + 0.5 * (edge - a)
            if cand == a:
                break
        val = fun(cand)
        if (val >= 0.0) if upward else (val <= 0.0):
            b = cand
            break
        a = cand
        step *= 2.0
    if b is None:
        raise RootFindingError("could not bracket the root inside the domain")
    lo, hi = (a, b) if a < b else (b, a)
    return optimize.brentq(fun, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500)


def domain_of(model, gamma, alpha, epsilon=None, c=0.0):
    """Maximal interval on which the Poschl-Teller potential of sign ``gamma``
    built on ``model`` is finite.

    Trigonometric branch (``gamma=+1``): ``|sqrt(2 alpha^2 m0) int_c^x J| < pi/2``.
    Hyperbolic branch (``gamma=-1``): the whole mass domain.
    """
    if gamma not in (1, -1):
        raise ValueError(f"gamma must be +1 or -1, got {gamma}")
    if alpha == 0:
        raise ValueError("alpha must be non-zero")
    if epsilon is not None and gamma * epsilon <= 0:
        raise ValueError(f"gamma={gamma} requires epsilon of the same sign, got {epsilon}")
    dom = model.domain
    if gamma == -1:
        if model.family is MassFamily.SINGULAR and model.role is MassRole.EFFECTIVE:
            # the potential tends to 0 at the singular point, which is kept
            return DomainInterval(dom.lower, dom.upper, lower_closed=True)
        return dom
    s = abs(alpha) * math.sqrt(2.0 * model.m0)
    y_edge = 0.5 * math.pi / s
    lower, upper = dom.lower, dom.upper
    if j_limit(model, +1, c) > y_edge:
        upper = j_inverse(model, y_edge, c)
    if j_limit(model, -1, c) < -y_edge:
        lower = j_inverse(model, -y_edge, c)
    return DomainInterval(lower, upper)


def exponential_turning_bounds(model, alpha):
    """``x0^-`` and ``x0^+`` of the trigonometric exponential-mass potential
    (``x0^+`` is ``inf`` when ``8 sqrt(2 alpha^2 m0) <= |kappa| pi``)."""
    k = abs(model.kappa)
    s = abs(alpha) * math.sqrt(2.0 * model.m0)
    r = math.pi * k / (8.0 * s)
    x_minus = -4.0 / k * math.log(1.0 + r)
    x_plus = -4.0 / k * math.log(1.0 - r) if r < 1.0 else math.inf
    return x_minus, x_plus
