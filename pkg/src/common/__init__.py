"""Shared errors and YAML helpers."""

from .errors import PlanError, PlanSchemaError, PlanSyntaxError, Violation
from .yamlio import dump_yaml, load_yaml_mapping, validate_model

__all__ = [
    "PlanError",
    "PlanSchemaError",
    "PlanSyntaxError",
    "Violation",
    "dump_yaml",
    "load_yaml_mapping",
    "validate_model",
]
