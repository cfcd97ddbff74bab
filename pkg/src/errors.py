from typing import Any, Optional


class GameDistError(Exception):
    """Base class for every error raised by the library. `exit_code` is what the CLI returns."""

    exit_code = 1


class ParameterError(GameDistError, ValueError):
    """Bad input: out-of-range sizes, malformed colorings, unknown names."""

    exit_code = 2


class GraphSyntaxError(ParameterError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class RuleError(ParameterError):
    """A move that the game rules forbid."""


class ApplicabilityError(ParameterError):
    """A strategy was requested outside the hypotheses it is proved for."""


class ResourceError(GameDistError):
    """A node, time or size budget ran out before an exact answer was reached."""

    exit_code = 3

    def __init__(self, message: str, stats: Optional[dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.stats = dict(stats or {})


class VerificationFailure(GameDistError):
    """A strategy that was asserted to win lost a game."""

    exit_code = 4

    def __init__(self, message: str, counterexample: Optional[list] = None) -> None:
        super().__init__(message)
        self.counterexample = counterexample or []


class InternalError(GameDistError):
    """Bookkeeping became inconsistent. Always a bug."""
