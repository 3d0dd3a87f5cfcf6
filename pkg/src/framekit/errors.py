"""Exception types shared across the package."""


class FramekitError(Exception):
    """Base class for all framekit errors."""


class DomainError(FramekitError):
    """An input violates a documented precondition (bad value, not a bug)."""


class NumericalError(FramekitError):
    """A numerical kernel failed: non-convergence or an internal cross-check breach."""
