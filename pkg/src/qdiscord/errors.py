"""Exception types shared across the package."""


class QDiscordError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(QDiscordError, ValueError):
    """Operands have incompatible or invalid dimensions."""


class ValidationError(QDiscordError, ValueError):
    """An input failed a physical-validity check.

    Carries the name of the violated invariant and the measured deviation so
    callers can report exactly what went wrong and by how much.
    """

    def __init__(self, invariant: str, magnitude: float, message: str):
        super().__init__(message)
        self.invariant = invariant
        self.magnitude = magnitude


class ConsistencyError(QDiscordError, RuntimeError):
    """Two independently computed routes to the same quantity disagreed."""


class StateFileError(QDiscordError, ValueError):
    """A state file could not be parsed."""

    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line
