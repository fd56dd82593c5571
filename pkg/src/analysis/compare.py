"""Cross-experiment comparison of assessment reports."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from tools.logger import get_logger

logger = get_logger(__name__)


class IncompatibleAssessmentsError(ValueError):
    """Assessments that cannot be compared with each other."""


@dataclass(frozen=True)
class VariantDelta:
    """Change of one variant slot between the first and the last experiment.

    Variants are paired by position within each assessment.
    """

    slot: int
    names: tuple[str, ...]
    visibility: dict[str, tuple[float | None, ...]]
    visibility_delta: dict[str, float | None]
    overhead: tuple[float, ...]
    overhead_delta: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "slot": self.slot,
            "names": list(self.names),
            "visibility": {name: list(values) for name, values in self.visibility.items()},
            "visibility_delta": self.visibility_delta,
            "overhead_percent": list(self.overhead),
            "overhead_delta": self.overhead_delta,
        }


@dataclass(frozen=True)
class Comparison:
    plan_ids: tuple[str, ...]
    baseline: str
    response_variables: tuple[str, ...]
    rows: list[VariantDelta]

    def to_dict(self) -> dict[str, Any]:
        return {
            "plan_ids": list(self.plan_ids),
            "baseline": self.baseline,
            "response_variables": list(self.response_variables),
            "rows": [row.to_dict() for row in self.rows],
        }


def load_assessment(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"assessment not found: {path}")
    return json.loads(path.read_text(encoding="utf-8"))


def _delta(first: float | None, last: float | None) -> float | None:
    if first is None or last is None:
        return None
    return round(last - first, 10)


def compare_assessments(assessments: list[dict[str, Any]]) -> Comparison:
    """Tabulate visibility and overhead deltas across experiments.

    Args:
        assessments: Parsed ``assessment.json`` documents, at least two

    Returns:
        One row per variant slot present in every assessment

    Raises:
        IncompatibleAssessmentsError: fewer than two inputs, differing
            response-variable sets or no common baseline name
    """
    if len(assessments) < 2:
        raise IncompatibleAssessmentsError("compare needs at least two assessments")

    variable_sets = {tuple(sorted(a["response_variables"])) for a in assessments}
    if len(variable_sets) > 1:
        raise IncompatibleAssessmentsError(
            f"response-variable sets differ: {' vs '.join(str(list(s)) for s in sorted(variable_sets))}"
        )
    baselines = {a["baseline"] for a in assessments}
    if len(baselines) > 1:
        raise IncompatibleAssessmentsError(f"no common baseline variant: {sorted(baselines)}")

    variables = sorted(variable_sets.pop())
    slots = min(len(a["variants"]) for a in assessments)
    rows = []
    for slot in range(slots):
        entries = [a["variants"][slot] for a in assessments]
        visibility = {
            name: tuple(entry["visibility"][name]["balanced_accuracy"] for entry in entries) for name in variables
        }
        overheads = tuple(entry["overhead"]["overhead_percent"] for entry in entries)
        rows.append(
            VariantDelta(
                slot=slot,
                names=tuple(entry["name"] for entry in entries),
                visibility=visibility,
                visibility_delta={name: _delta(values[0], values[-1]) for name, values in visibility.items()},
                overhead=overheads,
                overhead_delta=round(overheads[-1] - overheads[0], 2) + 0.0,
            )
        )

    logger.debug(f"Compared {len(assessments)} assessments over {slots} variant slots")
    return Comparison(
        plan_ids=tuple(a["plan_id"] for a in assessments),
        baseline=baselines.pop(),
        response_variables=tuple(variables),
        rows=rows,
    )
