"""Shared exception types."""

from __future__ import annotations


class FieldError(ValueError):
    """Bad field construction or coercion (even modulus, zero division, ...)."""


class RingMismatchError(ValueError):
    """Operands belong to different polynomial rings."""


class SingularMatrixError(ValueError):
    """A substitution or change of variables was not invertible."""


class ParseError(ValueError):
    """Malformed polynomial or input text; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PointError(ValueError):
    """A point is invalid for the requested operation (off the hypersurface,
    wrong length, all coordinates zero, not in the kernel subspace)."""


class ClassificationError(ValueError):
    """A condition check was applied to a point of the wrong type."""


class BudgetExceededError(RuntimeError):
    """A computation hit its explicit step or enumeration budget."""

    def __init__(self, kind: str, limit: int):
        super().__init__(f"{kind} budget exceeded (limit {limit})")
        self.kind = kind
        self.limit = limit


class InvariantViolationError(RuntimeError):
    """An internal cross-check that should hold by theorem failed; indicates
    a bug in this package rather than bad input."""
