"""Exception hierarchy for the workbench.

Every error raised by the library derives from WorkbenchError so callers
(CLI, HTTP API) can map validation failures to exit code 1 / HTTP 400 and
anything else to exit code 2 / HTTP 500.
"""
from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class DimensionError(WorkbenchError):
    """Vector/matrix lengths or shapes do not line up."""


class NormalizationError(WorkbenchError):
    """A weight vector does not sum to 1 within the accepted tolerance."""


class ScoreRangeError(WorkbenchError):
    """A score lies outside the unified [0, 1] scale."""


class DomainError(WorkbenchError):
    """Input outside the mathematical domain of an operation (e.g. t < 0)."""


class InputError(WorkbenchError):
    """Malformed or degenerate input to an operation."""


class DegenerateError(InputError):
    """Parameters make the requested quantity unidentifiable (e.g. alpha == beta)."""


class MatrixAbsentError(WorkbenchError):
    """A scoring operation needed an optional matrix the snapshot does not carry."""


class ExpressionError(WorkbenchError):
    """Base for expression language failures."""


class ExpressionSyntaxError(ExpressionError):
    """Source text does not parse; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UndeclaredVariableError(ExpressionError):
    """An expression references a variable that was never declared."""

    def __init__(self, name: str, position: int):
        super().__init__(f"undeclared identifier '{name}' (at position {position})")
        self.name = name
        self.position = position


class EvaluationError(ExpressionError):
    """Arithmetic failed at evaluation time (division by zero, log of <= 0, overflow)."""


class UnsolvableError(WorkbenchError):
    """The optimizer could not evaluate the problem anywhere in the box."""


class FormatError(WorkbenchError):
    """Wholly unreadable input file; carries the first offending byte offset."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(message)
        self.offset = offset


class ProbeError(WorkbenchError):
    """A network probe failed; the message carries the cause."""


class SchemaError(WorkbenchError):
    """A document failed validation; names the offending field."""

    def __init__(self, message: str, field: str):
        super().__init__(message)
        self.field = field


class StoreError(WorkbenchError):
    """Snapshot store misuse (append-only violation, unreadable directory)."""


class UnknownSnapshotError(StoreError):
    """Requested snapshot id is not in the store."""
