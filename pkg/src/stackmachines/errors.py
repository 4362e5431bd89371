"""Exception types shared across the package."""

from __future__ import annotations


class StackMachineError(Exception):
    """Base class for all library errors."""


class MalformedInputError(StackMachineError, ValueError):
    """An input symbol or annotation token falls outside the machine's alphabets."""


class CapExceededError(StackMachineError, ValueError):
    """A requested enumeration bound exceeds the configured safety cap."""

    def __init__(self, requested: int, cap: int):
        super().__init__(f"requested bound {requested} exceeds the safety cap {cap}")
        self.requested = requested
        self.cap = cap


class MachineValidationError(StackMachineError, ValueError):
    """A machine definition violates its well-formedness invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ParseError(StackMachineError, ValueError):
    """A machine file or token string failed to parse."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)
