"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the set on which an operation is defined."""


class PreconditionError(DomainError):
    """The operation is defined, but not for an input in this regime."""


class UnsupportedError(DomainError):
    """The requested criterion is not valid for these parameters."""
