"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class NumericalError(Exception):
    """Base class for failures of a numerical procedure."""


class DomainError(NumericalError, ValueError):
    pass


class InversionError(NumericalError):
    """No sign change of ``V - T`` inside the bracket."""


class AmbiguityError(InversionError):
    """The level ``T`` is crossed more than once inside the bracket."""


class TruncationError(NumericalError):
    """The potential did not confine within the allowed integration span.

    ``partial`` holds the result accumulated so far; its count is a lower
    bound on the true count.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class StiffnessError(NumericalError):
    pass


class CostGuardError(NumericalError):
    pass


class NotFoundError(NumericalError):
    pass


class OrderingError(NumericalError, ValueError):
    """Two potentials are not pointwise ordered as required."""


class AccuracyError(NumericalError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InsufficientDataError(NumericalError, ValueError):
    pass


class ParseError(ValueError):
    """Malformed user input (potential spec, zeros file, config file)."""
