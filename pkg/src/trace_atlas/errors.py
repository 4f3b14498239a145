"""Exception types shared across the package."""

from __future__ import annotations


class TraceAtlasError(Exception):
    """Base class for all package errors."""


class ParseError(TraceAtlasError, ValueError):
    """Malformed polynomial, tuple or CSV input.

    ``offset`` is a character offset within the offending text and ``line`` a
    1-based line number when the input came from a file.
    """

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


class NonSquarefree(TraceAtlasError, ArithmeticError):
    """gcd(f, f') is nonconstant, so f has a repeated root."""


class NegativeCoefficient(TraceAtlasError, ValueError):
    """Some a_k = (-1)^(n-k) c_k is not strictly positive."""


class NotOddPrime(TraceAtlasError, ValueError):
    pass


class DomainError(TraceAtlasError, ValueError):
    pass


class BracketFailure(TraceAtlasError, RuntimeError):
    """A root bracket did not show the expected sign change."""


class OrderingViolation(TraceAtlasError, ValueError):
    """The nominal upper curve dropped below the lower one."""


class DegenerateInput(TraceAtlasError, ValueError):
    """Tuple entries are not distinct enough for a meaningful discriminant."""
