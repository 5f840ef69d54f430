"""Exception types shared across the package."""


class HadminorError(Exception):
    """Base class for all errors raised by this package."""


class InvalidVertexSetError(HadminorError, ValueError):
    """A vertex set refers to vertices outside ``0..n-1``."""


class PreconditionError(HadminorError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class OperationRejected(PreconditionError):
    """An extension or breaking was refused; ``condition`` names the reason."""

    def __init__(self, condition: str, message: str | None = None):
        self.condition = condition
        super().__init__(message or condition)


class InvariantViolation(HadminorError, AssertionError):
    """A structural invariant failed after a mutation."""


class ParameterError(HadminorError, ValueError):
    """A numeric parameter is outside its allowed range."""


class DomainError(ParameterError):
    """Argument outside the domain of a function."""


class SizeLimitError(HadminorError, ValueError):
    """Input is larger than a brute-force routine accepts."""


class EmptyGraphError(PreconditionError):
    """A driver was called on the graph with no vertices."""


class BudgetExceededError(HadminorError, RuntimeError):
    """An exact search ran out of its node budget."""


class ParseError(HadminorError, ValueError):
    """Malformed graph file; ``offset`` is the byte or line position."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ReplayMismatch(HadminorError):
    """Replaying a trace produced a different effect than the one recorded."""
