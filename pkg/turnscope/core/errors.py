from __future__ import annotations

from typing import Optional


class TurnscopeError(Exception):
    pass


class SkeletonFormatError(TurnscopeError, ValueError):
    """Skeleton file does not conform to the turnskel format."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None) -> None:
        self.line = line
        self.path = path
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where = f"{where}{line}: "
        elif where:
            where = f"{where} "
        super().__init__(f"{where}{message}")


class AnnotationError(SkeletonFormatError):
    pass


class MissingJoint(TurnscopeError, ValueError):
    pass


class DegenerateVector(TurnscopeError, ValueError):
    pass


class TooShort(TurnscopeError, ValueError):
    pass


class NoUsableTransition(TurnscopeError, ValueError):
    pass


class EmptyInput(TurnscopeError, ValueError):
    pass


class InsufficientSubjects(TurnscopeError, ValueError):
    pass


class ConfigError(TurnscopeError, ValueError):
    pass
