"""Exception types raised across the package."""


class OpIneqError(Exception):
    """Base class for all errors raised by :mod:`opineq`."""


class NotSquare(OpIneqError, ValueError):
    pass


class NotHermitian(OpIneqError, ValueError):
    pass


class DimensionMismatch(OpIneqError, ValueError):
    pass


class NotPositiveDefinite(OpIneqError, ValueError):
    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class DomainViolation(OpIneqError, ValueError):
    """A scalar left the admissible domain.

    ``value`` is the offending number (an eigenvalue, a weight, the
    pre-expression of a representing function ...) so callers can record it
    as a witness.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class ConvergenceFailure(OpIneqError, ArithmeticError):
    pass


class OverflowGuard(OpIneqError, ValueError):
    """Inputs are large enough that exponentials would overflow."""


class KExceedsDim(OpIneqError, ValueError):
    pass


class NotIsometry(OpIneqError, ValueError):
    pass


class UnknownCheckId(OpIneqError, KeyError):
    pass


class ConfigError(OpIneqError, ValueError):
    pass
