"""Exception types shared across the package."""


class RpergError(Exception):
    """Base class for all errors raised by rperg."""


class EdgeListError(RpergError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(RpergError, ValueError):
    """A precondition of an operation was violated by the caller."""


class GrammarError(RpergError):
    """Invalid grammar state or grammar document."""


class OutOfVocabularyError(GrammarError, KeyError):
    """A rule key was requested that the grammar does not contain."""


class GenerationError(RpergError):
    """A derivation could not produce a graph."""


class ConvergenceError(RpergError):
    """An iterative numerical method did not converge."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual={residual:.3e})")
