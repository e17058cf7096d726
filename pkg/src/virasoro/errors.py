"""Exception types raised across the package."""


class VirasoroError(Exception):
    """Base class for all errors raised by this package."""


class BoundaryError(VirasoroError, ValueError):
    """An action would leave the truncation window of a weight module."""


class OrderError(VirasoroError, ValueError):
    """An element is not normalized under an order the operation accepts."""


class NotCartanError(VirasoroError, ValueError):
    """An element involves generators other than e(0) and c."""


class SchemaError(VirasoroError, ValueError):
    """Serialized input does not match the JSON schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class SourceError(VirasoroError, ValueError):
    """Malformed expression text.

    ``offset`` is a 0-based character offset into the input; ``line`` and
    ``column`` are 1-based.
    """

    def __init__(self, text, offset, expected, found):
        self.text = text
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        super().__init__(
            f"line {self.line}, column {self.column}: expected "
            f"{' or '.join(self.expected)}, found {found}"
        )
