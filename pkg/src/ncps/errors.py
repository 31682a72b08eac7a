"""Exception types raised across the package."""

from __future__ import annotations


class NcpsError(Exception):
    """Base class. ``span`` is an optional ``(start, end)`` source offset pair."""

    def __init__(self, message: str = "", span: tuple[int, int] | None = None):
        super().__init__(message)
        self.span = span


class NotMonomialDivisor(NcpsError, ValueError):
    pass


class DivisionByZero(NcpsError, ZeroDivisionError):
    pass


class NegativeHbarPower(NcpsError, ValueError):
    pass


class NotClassical(NcpsError, ValueError):
    pass


class NegativeOperatorPower(NcpsError, ValueError):
    """x or p raised to a negative power; the algebra has no inverses."""


class ParseError(NcpsError, ValueError):
    """Syntax error with 1-based line/column and the set of tokens that would have been accepted."""

    def __init__(self, message, *, source="", offset=0, expected=()):
        super().__init__(message, span=(offset, offset + 1))
        self.source = source
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        self.line, self.column = line_col(source, offset)

    def __str__(self):
        msg = f"{self.line}:{self.column}: {self.args[0]}"
        if self.expected:
            msg += " (expected one of: " + ", ".join(self.expected) + ")"
        return msg


class ReservedName(ParseError):
    pass


class BadDimension(NcpsError, ValueError):
    pass


class MissingParam(NcpsError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DegreeTooHigh(NcpsError, ValueError):
    pass


def line_col(source: str, offset: int) -> tuple[int, int]:
    """1-based (line, column) of ``offset`` in ``source``."""
    offset = max(0, min(offset, len(source)))
    line = source.count("\n", 0, offset) + 1
    col = offset - (source.rfind("\n", 0, offset) + 1) + 1
    return line, col
