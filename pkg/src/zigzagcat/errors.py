"""Error taxonomy shared across the engine.

Every failure that a caller can act on is a distinct exception class, so the
CLI and the HTTP service can map them to structured payloads without string
matching.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""

    @property
    def reason(self) -> str:
        return type(self).__name__


class SizeMismatch(EngineError):
    pass


class IndexOutOfRange(EngineError):
    pass


class EmptyShape(EngineError):
    pass


class NotConnected(EngineError):
    pass


class NoColimit(EngineError):
    """A base-level colimit does not exist.

    ``cause`` is one of "Cycle", "Incomparable", "TiedMaxima", "NoUpperBound".
    """

    def __init__(self, cause: str, detail: str = ""):
        self.cause = cause
        super().__init__(f"{cause}{': ' + detail if detail else ''}")


class BiasRequired(EngineError):
    pass


class BoundaryMismatch(EngineError):
    pass


class PathOutOfRange(EngineError):
    pass


class InvalidWindow(EngineError):
    pass


class DeltaColimitFailed(EngineError):
    """Step (1) of the zigzag colimit procedure failed."""

    def __init__(self, inner: NoColimit):
        self.inner = inner
        super().__init__(f"step 1: {inner}")


class BaseColimitFailed(EngineError):
    """Step (4.ii) of the zigzag colimit procedure failed at height ``k``."""

    def __init__(self, height: int, inner: EngineError):
        self.height = height
        self.inner = inner
        super().__init__(f"step 4.ii at height {height}: {inner}")


class ColimitFailed(EngineError):
    """A contraction failed; carries which step broke and where."""

    def __init__(self, step: str, inner: EngineError, height: int | None = None):
        self.step = step
        self.inner = inner
        self.height = height
        super().__init__(f"{step}: {inner}")

    @property
    def reason(self) -> str:
        return self.inner.reason


class ValidationFailed(EngineError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class DimensionViolation(EngineError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotGlobular(EngineError):
    pass


class DimensionMismatch(EngineError):
    pass


class ConeMapMissing(EngineError):
    pass


class ExpansionUnsupported(EngineError):
    pass


class RegularPropagationImpossible(EngineError):
    pass


class AssertionFailed(EngineError):
    """A script assertion did not hold; a command failure, not a parse one."""


class ParseError(EngineError):
    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{message}{' at ' + location if location else ''}")


class ReplayFailed(EngineError):
    """A script command failed; carries the line number, the underlying
    error, and the workspace as of the last successful command."""

    def __init__(self, line: int, inner: EngineError, workspace):
        self.line = line
        self.inner = inner
        self.workspace = workspace
        super().__init__(f"line {line}: {inner}")

    @property
    def reason(self) -> str:
        return self.inner.reason


class VersionUnsupported(EngineError):
    pass


class NothingToUndo(EngineError):
    pass
