"""Experiment plan format: models, parsing and validation.

Usage:
    from src.plan import load_experiment, validate_plan

    plan, topology = load_experiment("plans/delay-demo.yaml")
    violations = validate_plan(plan, topology)
"""

from .models import (
    AnalysisSpec,
    ExperimentPlan,
    PhaseSchedule,
    ResponseVariableSpec,
    VariantSpec,
)
from .parser import load_experiment, load_plan, parse_plan, resolve_topology, serialize_plan
from .validator import validate_plan

__all__ = [
    "AnalysisSpec",
    "ExperimentPlan",
    "PhaseSchedule",
    "ResponseVariableSpec",
    "VariantSpec",
    "load_experiment",
    "load_plan",
    "parse_plan",
    "resolve_topology",
    "serialize_plan",
    "validate_plan",
]
