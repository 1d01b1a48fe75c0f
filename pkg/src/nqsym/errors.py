"""Exception types shared across the package."""


class NQSymError(Exception):
    """Base class for all package errors."""


class ValidationError(NQSymError, ValueError):
    """Malformed or out-of-contract input."""


class ResourceLimitError(NQSymError):
    """An enumeration would exceed the configured size cap."""


class NotDivisibleError(NQSymError, ValueError):
    """Requested exact division has no solution."""
