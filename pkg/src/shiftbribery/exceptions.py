"""Exception types shared across the package."""


class ShiftBriberyError(Exception):
    """Base class for errors raised by this package."""


class InvalidShiftAction(ShiftBriberyError, ValueError):
    """A shift action does not fit the instance it is applied to."""


class BudgetExceeded(ShiftBriberyError):
    """An enumeration would exceed its configured work budget."""


class NoFiniteSolution(ShiftBriberyError):
    """No successful shift action of finite cost exists (or none was found)."""


class ParseError(ShiftBriberyError, ValueError):
    """Malformed instance, graph or set-cover text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
