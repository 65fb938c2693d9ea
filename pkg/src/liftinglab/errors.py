class InputError(ValueError):
    """Malformed or out-of-domain input."""


class ParseError(InputError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class CapError(InputError):
    """Request exceeds a size cap (table length, scan size, search space)."""


class UnboundedError(InputError):
    """Raised when a supremum is requested for a function that is not an almost lifting."""
