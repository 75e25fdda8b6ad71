"""Exception types raised across the package."""


class LuentError(Exception):
    """Base class for all errors raised by luent."""


class StateError(LuentError, ValueError):
    """A state or its parameters failed validation."""


class NotNormalized(StateError):
    pass


class NonFinite(StateError):
    pass


class BadShape(StateError):
    pass


class BadPartition(StateError):
    pass


class IncompatibleParams(StateError):
    pass


class WrongPartyCount(StateError):
    pass


class AlphaOutOfRange(StateError):
    pass


class DimMismatch(StateError):
    pass


class ShapeMismatch(StateError):
    pass


class NotOrthogonal(StateError):
    pass


class NumericalError(LuentError, ArithmeticError):
    """Base class for failures that indicate numerical pathology or a bug."""


class InternalNumericalError(NumericalError):
    pass


class EigenFailure(NumericalError):
    pass


class ClosedFormMismatch(NumericalError):
    pass


class DegenerateAlpha(NumericalError):
    """Every alpha minor vanishes, so the rank-two criterion has no pivot."""


class DegenerateRoots(NumericalError):
    """The pivot quadratic has a double root (z = mu2 - mu1 = 0)."""
