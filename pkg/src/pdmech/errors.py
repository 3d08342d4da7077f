"""Exception hierarchy shared by every module of the package."""


class PDMError(Exception):
    """Base class for all package errors."""


class DomainError(PDMError, ValueError):
    """A position lies at or beyond a singular point of the model.

    ``bound`` names the offending domain edge (or is ``None`` when the
    failure is not tied to a single edge).
    """

    def __init__(self, message, x=None, bound=None):
        super().__init__(message)
        self.x = x
        self.bound = bound


class RegimeError(PDMError, ValueError):
    """Energy or sign parameters violate the admissible regime."""


class QuadratureError(PDMError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class RootFindingError(PDMError, ArithmeticError):
    """A bracketed root solve failed where a unique root was expected."""


class IntegrationError(PDMError, RuntimeError):
    """The ODE integrator exhausted its step budget or step size."""


class ConfigError(PDMError, ValueError):
    """Invalid or inconsistent configuration document."""
