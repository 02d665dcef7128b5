"""Exception hierarchy shared across lcplab."""


class LcplabError(Exception):
    """Base class for all library errors."""


class DimensionError(LcplabError, ValueError):
    """Operands have incompatible shapes."""


class SingularMatrixError(LcplabError, ArithmeticError):
    """A matrix (or pivot block) that must be invertible is singular."""

    def __init__(self, message="matrix is singular", det=0):
        super().__init__(message)
        self.det = det


class SizeCapError(LcplabError, ValueError):
    """An exponential sweep was requested above the configured size cap."""


class PreconditionError(LcplabError, ValueError):
    """A documented precondition of an operation does not hold."""


class ConsistencyError(LcplabError, RuntimeError):
    """An internal postcondition failed (this indicates a bug or a theorem violation)."""
