"""Exception hierarchy shared by every module."""


class LeancutError(Exception):
    """Base class for all errors raised by leancut."""


class InputError(LeancutError, ValueError):
    """Malformed or out-of-domain arguments (unknown ids, bad sizes)."""


class ParseError(InputError):
    """A graph or decomposition file could not be parsed."""


class PreconditionError(LeancutError):
    """An operation was called on an input outside its domain."""


class ContractError(LeancutError):
    """A documented calling contract was violated."""


class InvariantError(LeancutError, AssertionError):
    """An internal invariant failed. Always a bug, never an expected result."""


class ResourceError(LeancutError):
    """A configured bound (time, size, enumeration) was exceeded."""


class UndecidedError(ResourceError):
    """Leanness could not be decided within the enumeration bound."""


class IterationLimitError(ResourceError):
    """The improvement loop hit its iteration guard.

    Carries the last decomposition reached and the fatness trace so far.
    """

    def __init__(self, message, partial=None, trace=None):
        super().__init__(message)
        self.partial = partial
        self.trace = list(trace or [])
