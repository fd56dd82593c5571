"""Reading and writing experiment plan documents."""

from pathlib import Path

from src.common.yamlio import dump_yaml, load_yaml_mapping, validate_model
from src.sue.topology import Topology, load_topology
from tools.logger import get_logger

from .models import ExperimentPlan

logger = get_logger(__name__)


def parse_plan(text: str) -> ExperimentPlan:
    """Parse a plan YAML document, applying documented defaults.

    Args:
        text: YAML document

    Returns:
        Fully populated plan (repetitions=1, base_seed=0 when absent)

    Raises:
        PlanSyntaxError: malformed YAML (with line/column)
        PlanSchemaError: unknown field, type mismatch, duplicate variant
    """
    return validate_model(ExperimentPlan, load_yaml_mapping(text))


def serialize_plan(plan: ExperimentPlan) -> str:
    """Render a plan back to YAML; ``parse_plan`` of the result equals ``plan``."""
    return dump_yaml(plan.model_dump(mode="json", exclude_none=True))


def load_plan(path: str | Path) -> ExperimentPlan:
    """Read and parse a plan file.

    Raises:
        FileNotFoundError: the file does not exist
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"plan file not found: {path}")
    plan = parse_plan(path.read_text(encoding="utf-8"))
    logger.debug(f"Loaded plan '{plan.id}' from {path}")
    return plan


def resolve_topology(plan: ExperimentPlan, base_dir: str | Path = ".") -> Topology:
    """Return the plan's topology, loading it relative to ``base_dir`` when it is a path."""
    if isinstance(plan.topology, Topology):
        return plan.topology
    path = Path(plan.topology)
    if not path.is_absolute():
        path = Path(base_dir) / path
    return load_topology(path)


def load_experiment(path: str | Path) -> tuple[ExperimentPlan, Topology]:
    """Load a plan file and the topology it references.

    Raises:
        FileNotFoundError: the plan or its topology file does not exist
    """
    path = Path(path)
    plan = load_plan(path)
    return plan, resolve_topology(plan, path.parent)
