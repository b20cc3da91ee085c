"""Exception hierarchy shared by every ncmontel module.

All errors derive from ``ValueError`` so callers that already guard numeric
input with ``except ValueError`` keep working.
"""

from __future__ import annotations


class NcMontelError(ValueError):
    """Base class for library errors."""


class InvalidInputError(NcMontelError):
    """Shapes, dimensions or values that the operation cannot accept."""


class PreconditionError(NcMontelError):
    """Inputs are well-formed but violate a mathematical precondition."""


class CapacityError(NcMontelError):
    """The truncation dimension M is too small for the requested construction."""

    def __init__(self, message: str, *, required_M: int, available_M: int) -> None:
        super().__init__(message)
        self.required_M = required_M
        self.available_M = available_M


class ParseError(InvalidInputError):
    """Free-polynomial source text did not match the grammar."""

    def __init__(self, message: str, *, position: int, line: int = 1, column: int = 1) -> None:
        super().__init__(f"{message} (at char {position}, line {line}, col {column})")
        self.position = position
        self.line = line
        self.column = column


class ConvergenceError(NcMontelError):
    """Subsequence extraction did not certify a Cauchy subsequence."""

    def __init__(self, message: str, *, subsequence: list[int], cauchy_residual: float) -> None:
        super().__init__(f"{message} (kept {len(subsequence)} members, cauchy residual {cauchy_residual:.3e})")
        self.subsequence = subsequence
        self.cauchy_residual = cauchy_residual
