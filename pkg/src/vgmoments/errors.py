"""Exception types shared across the package.

Validation problems derive from :class:`ValueError`; numerical failures
derive from :class:`ArithmeticError` and carry whatever estimate was
reached before giving up.
"""


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class ParameterError(ValueError):
    """A distribution parameter violates its constraint.

    ``constraint`` names the offending parameter (``"nu"``, ``"alpha"``,
    ``"beta"``, ``"rho"``, ...).
    """

    def __init__(self, constraint, message):
        super().__init__(message)
        self.constraint = constraint


class OrderError(ValueError):
    """Moment order outside the range where the moment exists."""


class ParityError(ValueError):
    """Moment order has the wrong parity or is not an integer."""


class LocationError(ValueError):
    """Moment formulas are only valid for a zero location parameter."""


class SingularityError(ValueError):
    """Density evaluated at a point where it is infinite."""


class NonConvergenceError(ArithmeticError):
    """A series did not meet its stopping rule within the term budget."""

    def __init__(self, message, partial=None, terms=0):
        super().__init__(message)
        self.partial = partial
        self.terms = terms


class ToleranceNotMetError(ArithmeticError):
    """Adaptive quadrature ran out of subdivisions before reaching tolerance."""

    def __init__(self, message, estimate=None, rel_error=None):
        super().__init__(message)
        self.estimate = estimate
        self.rel_error = rel_error
