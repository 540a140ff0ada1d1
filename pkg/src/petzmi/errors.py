"""Exception types shared across the package."""


class PetzmiError(Exception):
    """Base class for all package errors."""


class InvalidInputError(PetzmiError, ValueError):
    """Input violates a structural precondition (shape, hermiticity, normalization)."""


class DomainError(PetzmiError, ValueError):
    """Input is structurally valid but outside the mathematical domain of the operation."""


class UnsupportedRegimeError(PetzmiError):
    """Requested parameter regime has no supported computation path."""


class ResourceLimitError(PetzmiError):
    """Requested computation exceeds the configured size guards."""


class NumericalDegradationError(PetzmiError):
    """A monotonicity or consistency guarantee was violated beyond tolerance at runtime."""
