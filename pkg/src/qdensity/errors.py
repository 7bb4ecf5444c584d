"""Exception types shared across the package."""


class ParseError(ValueError):
    """Syntax or semantic error in a subset description string.

    ``position`` is the 0-based character offset of the offending token,
    or None for errors that have no single location.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size or term limit."""
