"""Errors and violation records shared by the plan, topology and scenario loaders."""

from dataclasses import dataclass
from typing import Any


class PlanError(ValueError):
    """Base class for documents that cannot be turned into a model."""


class PlanSyntaxError(PlanError):
    """The document is not well-formed YAML.

    Attributes:
        line: 1-based line of the problem (None if unknown)
        column: 1-based column of the problem (None if unknown)
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"YAML syntax error{where}: {message}")


class PlanSchemaError(PlanError):
    """The document is YAML but does not match the schema.

    Attributes:
        errors: list of ``{"path": "a.b[0]", "message": ..., "type": ...}``
    """

    def __init__(self, errors: list[dict[str, Any]]):
        self.errors = errors
        lines = [f"{e['path'] or '<root>'}: {e['message']}" for e in errors]
        super().__init__("invalid document:\n  " + "\n  ".join(lines))


@dataclass(frozen=True)
class Violation:
    """A semantic problem found while validating a parsed document.

    Attributes:
        code: Machine-readable code (e.g. ``UnknownTarget``)
        path: Offending location (e.g. ``treatments[0].target``)
        message: Human-readable explanation
    """

    code: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} {self.path}: {self.message}"
