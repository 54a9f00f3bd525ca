"""Exception types shared across the package."""


class GroupColourError(Exception):
    """Base class for all domain errors raised by this package."""


class ValidationError(GroupColourError):
    """A group axiom or structural invariant failed during construction."""


class SizeLimitError(GroupColourError):
    """An enumeration or construction exceeded its configured bound."""


class ParseError(GroupColourError):
    """A text input (group / cover / pairs file) is malformed."""

    def __init__(self, message: str, source: str = "<input>", line: int = 0, col: int = 0):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.source = source
        self.line = line
        self.col = col


class CoverError(GroupColourError):
    """A cover is invalid (e.g. its classes do not cover the group)."""


class ConsistencyError(GroupColourError):
    """An internal guarantee failed; indicates an implementation bug."""
