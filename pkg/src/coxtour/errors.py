"""Exception hierarchy shared by all modules."""


class CoxTourError(Exception):
    """Base class for all errors raised by coxtour."""


class InvalidScoreError(CoxTourError, ValueError):
    """A score vector fails a membership condition.

    ``reason`` is one of ``"length"``, ``"lattice"``, ``"parity"``,
    ``"submajorization"`` or ``"majorization"``.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


class PreconditionError(CoxTourError, ValueError):
    """An operation was called outside its documented domain."""


class EnumerationGuardError(CoxTourError, ValueError):
    """An exhaustive enumeration would exceed the configured size guard."""


class InvariantViolation(CoxTourError, RuntimeError):
    """An internal consistency check failed; indicates a bug."""
