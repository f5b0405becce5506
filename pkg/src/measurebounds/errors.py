"""Exception hierarchy shared by every module."""


class BoundsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(BoundsError, ValueError):
    pass


class ParseError(InvalidArgument):
    """Malformed polynomial text. ``position`` is the 0-based column of the fault."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class NumericFailure(BoundsError, ArithmeticError):
    pass


class ResourceLimit(BoundsError):
    pass
