"""Exception hierarchy shared by the modalcube modules."""

from __future__ import annotations


class ModalCubeError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(ModalCubeError, ValueError):
    """A world, relation index or variable is out of range or unbound."""


class ResourceLimitError(ModalCubeError, RuntimeError):
    """An enumeration would exceed a configured bound."""

    def __init__(self, message: str, bound: str):
        super().__init__(f"{message} (bound: {bound})")
        self.bound = bound


class BudgetError(ModalCubeError, ValueError):
    """A search budget violates its own invariants."""


class ParseError(ModalCubeError, ValueError):
    """Malformed frame or formula text."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.msg = message
        self.line = line
        self.column = column


class FrameParseError(ParseError):
    pass


class FormulaSyntaxError(ParseError):
    pass


class UnknownNameError(ModalCubeError, KeyError):
    """Lookup of a logic, condition or axiom name that does not exist."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
