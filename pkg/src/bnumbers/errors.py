"""Exception hierarchy shared by all modules."""


class BNumberError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BNumberError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnreachableTargetError(DomainError):
    """An uncertainty target cannot be reached with finite padding."""


class MalformedRepresentationError(BNumberError, ValueError):
    """A bit string does not describe a valid representation."""


class MalformedPaddingError(MalformedRepresentationError):
    """A padded string has a corrupted header or truncated padding."""


class CapacityError(BNumberError):
    """A value exceeds a fixed-width field or a declared size limit."""


class MachineError(BNumberError, ValueError):
    """A machine description is invalid."""


class MachineSyntaxError(MachineError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DeterminismError(MachineSyntaxError):
    """Two transitions share the same (state, symbol) pair."""


class InsufficientDataError(BNumberError, ValueError):
    """Too few records to estimate a growth rate."""
