"""Exception types shared across the package."""


class PdagError(Exception):
    """Base class for all errors raised by :mod:`pdagext`."""


class UsageError(PdagError, ValueError):
    """A precondition on the arguments was violated."""


class ParseError(UsageError):
    """Malformed edge-list or suite input. ``lineno`` is 1-based."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidInput(PdagError):
    """The input graph does not satisfy an algorithm's semantic precondition
    (for example, a maximal orientation was requested for a non-extendable PDAG).
    """


class InvariantBreach(PdagError):
    """An internal cross-check failed; this indicates a bug, not bad input."""
