"""Exception types. Each maps onto one CLI exit code."""


class ValidationError(ValueError):
    """Malformed input: not a probability vector, bad weights, bad order."""


class InfeasibleSpecError(RuntimeError):
    """The pair generator could not satisfy its spec within the attempt cap."""


class InsufficientDataError(ValueError):
    """Fewer than two usable points for a line fit."""


class UndefinedRelativeError(ZeroDivisionError):
    """Relative difference against a zero reference with a nonzero value."""
