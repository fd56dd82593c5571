"""YAML parsing shared by plans, topologies and scenarios."""

from typing import Any, TypeVar

import yaml
from pydantic import BaseModel, ValidationError

from .errors import PlanSchemaError, PlanSyntaxError

M = TypeVar("M", bound=BaseModel)


def load_yaml_mapping(text: str) -> dict[str, Any]:
    """Parse a YAML document whose top level must be a mapping.

    Raises:
        PlanSyntaxError: malformed YAML, with the 1-based position
        PlanSchemaError: top level is not a mapping
    """
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark or e.context_mark
        line = mark.line + 1 if mark is not None else None
        column = mark.column + 1 if mark is not None else None
        raise PlanSyntaxError(str(e.problem or e), line=line, column=column) from e
    except yaml.YAMLError as e:
        raise PlanSyntaxError(str(e)) from e

    if not isinstance(data, dict):
        raise PlanSchemaError(
            [{"path": "", "message": "document must be a mapping", "type": "type_error"}]
        )
    return data


def _format_loc(loc: tuple[Any, ...]) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def validate_model(model: type[M], data: Any) -> M:
    """Validate loaded YAML data into ``model``, mapping pydantic errors to PlanSchemaError."""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        errors = [
            {"path": _format_loc(err["loc"]), "message": err["msg"], "type": err["type"]}
            for err in e.errors()
        ]
        raise PlanSchemaError(errors) from e


def dump_yaml(data: Any) -> str:
    """Serialize plain data to YAML preserving key order."""
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)
