"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument is outside the domain of the operation."""


class ParseError(InputError):
    """A code or graph file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """An exact search ran past its size or node budget."""


class PreconditionError(ValueError):
    """A structural precondition (e.g. correctability of a region) failed."""


class InvariantViolation(AssertionError):
    """A proven inequality failed on concrete data; always signals a bug."""


class SeparationFailed(RuntimeError):
    """A separator search failed mid-partition; ``partial`` holds the splits done so far."""

    def __init__(self, message: str, partial=()):
        self.partial = tuple(partial)
        super().__init__(message)
