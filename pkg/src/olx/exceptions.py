"""
Error hierarchy for olx.

Every error raised on purpose by the library derives from ``OlxError``.
The CLI maps the families below onto exit codes.
"""

from typing import Optional


class OlxError(Exception):
    """Root of all olx errors."""


class ValidationError(OlxError, ValueError):
    """Invalid catalog parameters or malformed objects."""


class ScenarioError(ValidationError):
    """
    Scenario schema violation.

    Args:
        message: What is wrong
        path: Dotted field path inside the scenario document
    """

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)


class DomainError(OlxError, ValueError):
    """Argument outside the domain of an operation."""


class PreconditionError(OlxError, ValueError):
    """Operation precondition not met (e.g. non-injective forward image)."""


class InvariantError(OlxError, RuntimeError):
    """Internal invariant breach; indicates a bug or an unreachable state."""


# CLI exit codes
EXIT_OK = 0
EXIT_SCENARIO = 2
EXIT_PRECONDITION = 3
EXIT_INVARIANT = 4


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the documented CLI exit code."""
    if isinstance(error, InvariantError):
        return EXIT_INVARIANT
    if isinstance(error, (PreconditionError, DomainError)):
        return EXIT_PRECONDITION
    if isinstance(error, ValidationError):
        return EXIT_SCENARIO
    return EXIT_INVARIANT


__all__ = [
    'OlxError',
    'ValidationError',
    'ScenarioError',
    'DomainError',
    'PreconditionError',
    'InvariantError',
    'EXIT_OK',
    'EXIT_SCENARIO',
    'EXIT_PRECONDITION',
    'EXIT_INVARIANT',
    'exit_code_for',
]
