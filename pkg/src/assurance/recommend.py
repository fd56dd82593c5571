"""Budget-aware ranking of observability design alternatives.

Scoring rule:

1. A variant strictly dominated on (visibility, -overhead) by another is
   set aside and ranked after every non-dominated one. Missing visibility
   counts as 0.
2. Under budget pressure (remaining fraction below the threshold) variants
   rank by detection latency (none last), then overhead.
3. Otherwise detecting variants rank by overhead, followed by the
   non-detecting ones by descending visibility.

Names break remaining ties, so the ranking is a total order.
"""

from dataclasses import dataclass
from typing import Any

from .budget import ErrorBudget

DEFAULT_BUDGET_THRESHOLD = 0.25

_INF = float("inf")


@dataclass(frozen=True)
class VariantAssessment:
    """What the recommender needs to know about one variant."""

    name: str
    visibility: float | None
    detected: bool
    detection_latency_s: float | None
    overhead_percent: float

    @property
    def visibility_or_zero(self) -> float:
        return self.visibility if self.visibility is not None else 0.0


@dataclass(frozen=True)
class RankedVariant:
    rank: int
    name: str
    visibility: float | None
    detection_latency_s: float | None
    overhead_percent: float
    verdict: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "name": self.name,
            "visibility": self.visibility,
            "detection_latency_s": self.detection_latency_s,
            "overhead_percent": self.overhead_percent,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class Recommendation:
    ranking: list[RankedVariant]
    rationale: str
    budget: dict[str, Any]
    budget_pressure: bool

    @property
    def best(self) -> str | None:
        return self.ranking[0].name if self.ranking else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "ranking": [row.to_dict() for row in self.ranking],
            "rationale": self.rationale,
            "budget": self.budget,
            "budget_pressure": self.budget_pressure,
        }


def dominates(a: VariantAssessment, b: VariantAssessment) -> bool:
    """``a`` is at least as good on both axes and strictly better on one."""
    at_least = a.visibility_or_zero >= b.visibility_or_zero and a.overhead_percent <= b.overhead_percent
    strictly = a.visibility_or_zero > b.visibility_or_zero or a.overhead_percent < b.overhead_percent
    return at_least and strictly


def _latency_first(v: VariantAssessment) -> tuple[Any, ...]:
    latency = v.detection_latency_s
    return (latency is None, latency if latency is not None else _INF, v.overhead_percent, v.name)


def _overhead_first(v: VariantAssessment) -> tuple[Any, ...]:
    if v.detected:
        return (0, v.overhead_percent, 0.0, v.name)
    return (1, -v.visibility_or_zero, v.overhead_percent, v.name)


def recommend(
    assessments: list[VariantAssessment],
    budget: ErrorBudget | None,
    threshold: float = DEFAULT_BUDGET_THRESHOLD,
) -> Recommendation:
    """Rank variants for the current error-budget situation.

    Args:
        assessments: One entry per variant (at least one)
        budget: Current error budget; None means no ledger, treated as a full budget
        threshold: Remaining-fraction level below which the budget is under pressure

    Returns:
        Ranked variants with a rationale naming the branch applied
    """
    if not assessments:
        raise ValueError("recommend needs at least one assessed variant")

    fraction = budget.remaining_fraction if budget is not None else 1.0
    pressure = fraction < threshold
    key = _latency_first if pressure else _overhead_first

    # peel Pareto layers so a dominated variant always follows its dominators
    ordered: list[VariantAssessment] = []
    remaining_variants = list(assessments)
    while remaining_variants:
        layer = [v for v in remaining_variants if not any(dominates(w, v) for w in remaining_variants)]
        ordered += sorted(layer, key=key)
        remaining_variants = [v for v in remaining_variants if v not in layer]
    dominated = {v.name for v in assessments if any(dominates(w, v) for w in assessments)}

    ranking = []
    for rank, v in enumerate(ordered, start=1):
        if v.name in dominated:
            verdict = "dominated"
        elif rank == 1:
            verdict = "recommended"
        else:
            verdict = "detected" if v.detected else "not detected"
        ranking.append(RankedVariant(rank, v.name, v.visibility, v.detection_latency_s, v.overhead_percent, verdict))

    if budget is None:
        remaining = "no error-budget ledger, full budget assumed"
    else:
        remaining = f"{fraction:.1%} of the error budget remains"
    if pressure:
        rationale = (
            f"{remaining} (below {threshold:.0%}): ranked by detection latency, then overhead."
        )
    else:
        rationale = (
            f"{remaining} (at or above {threshold:.0%}): detecting variants ranked by overhead, "
            "non-detecting variants last by visibility."
        )
    if dominated:
        rationale += f" Dominated on visibility and overhead: {', '.join(sorted(dominated))}."

    budget_state = budget.to_dict() if budget is not None else {"source": "none"}
    return Recommendation(ranking, rationale, budget_state, pressure)
