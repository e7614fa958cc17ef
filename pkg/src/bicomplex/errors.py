"""Exception hierarchy shared across the package.

The three classes mirror the CLI exit codes: ParseError -> 1,
ValidationError -> 2, InternalError -> 3.  InternalError is reserved for
violated invariants of the engine itself (a bug, never bad user input).
"""

from __future__ import annotations


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ValueError):
    pass


class InternalError(AssertionError):
    pass
