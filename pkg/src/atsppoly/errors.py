"""Shared exception types."""


class CapacityError(RuntimeError):
    """Raised when an operation would require enumeration beyond the desk-scale cap."""


class SamplingError(RuntimeError):
    """Raised when a randomized construction cannot satisfy its constraints."""


class InstanceParseError(ValueError):
    """Raised on malformed instance files; carries line/column positions."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
