"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(RuntimeError):
    """A bounded enumeration outgrew its cap; ``partial`` holds what was found."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class InconclusiveError(RuntimeError):
    """The bounded search ended without a verdict."""
