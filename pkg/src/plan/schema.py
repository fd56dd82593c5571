"""JSON schemas of the document formats, as printed by ``oxlab schema``."""

import json
from typing import Any, Literal

from src.sue.topology import Topology

from .models import ExperimentPlan

SchemaKind = Literal["plan", "topology", "scenario"]


def document_schema(kind: SchemaKind = "plan") -> dict[str, Any]:
    """JSON schema of a plan, topology or incident scenario document."""
    if kind == "plan":
        return ExperimentPlan.model_json_schema()
    if kind == "topology":
        return Topology.model_json_schema()
    if kind == "scenario":
        from src.assurance.scenarios import IncidentScenario

        return IncidentScenario.model_json_schema()
    raise ValueError(f"unknown schema kind '{kind}'")


def render_schema(kind: SchemaKind = "plan") -> str:
    return json.dumps(document_schema(kind), indent=2, sort_keys=True)
