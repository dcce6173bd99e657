"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A domain type was constructed with inconsistent data."""


class DomainError(ValueError):
    """An operation was evaluated outside its mathematical domain."""


class SupportError(ValueError):
    """A test function violates a localization precondition."""


class GridMismatchError(ValueError):
    """Two vectors live on different momentum grids."""


class OverflowGuardError(ValueError):
    """A coherent-vector norm exceeds the truncation's overflow guard."""


class ConvergenceError(RuntimeError):
    """A limit procedure did not produce a Cauchy-decreasing sequence."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConditioningError(RuntimeError):
    """A linear solve was rejected because of an ill-conditioned system."""
