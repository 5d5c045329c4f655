"""Exception types shared across the library."""


class SolvedegError(Exception):
    """Base class for all library errors."""


class UsageError(SolvedegError):
    """Invalid input or a violated precondition (maps to CLI exit code 1)."""


class CapacityError(SolvedegError):
    """A resource cap was exceeded: too many columns, pairs, or matrix cells.

    Carries enough context in the message to diagnose which cap fired.
    Maps to CLI exit code 2.
    """


class DegreeCapExceeded(SolvedegError):
    """A degree scan ran past its cap without finding the target.

    The partial per-degree trace gathered so far is kept on the exception
    so callers can report it. Maps to CLI exit code 2.
    """

    def __init__(self, message, cap, trace=None):
        super().__init__(message)
        self.cap = cap
        self.trace = trace if trace is not None else []
