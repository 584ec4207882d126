"""Exception types shared across the package."""


class BooleanityError(Exception):
    """Base class for errors raised by this package."""


class InvalidArgumentError(BooleanityError, ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(BooleanityError):
    """A dense computation would exceed the configured size cap."""


class ParseError(BooleanityError, ValueError):
    """A function file could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
