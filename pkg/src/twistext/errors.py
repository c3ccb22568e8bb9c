"""Exception types shared across the package."""


class TwistExtError(Exception):
    """Base class for every error raised by twistext."""


class PartitionError(TwistExtError, ValueError):
    pass


class WeightMismatchError(TwistExtError, ValueError):
    pass


class IntegralityError(TwistExtError, ArithmeticError):
    """A character sum that should be an honest multiplicity was not.

    Raised when the exact division by d! leaves a remainder or yields a
    negative coefficient; on inputs built by this package it means a bug.
    """


class DegreeError(TwistExtError, ValueError):
    pass


class UnsupportedFunctorError(TwistExtError, ValueError):
    pass


class HypothesisError(TwistExtError, ValueError):
    pass


class ExprSyntaxError(TwistExtError, ValueError):
    pass


class ResourceGuardError(TwistExtError, ValueError):
    pass
