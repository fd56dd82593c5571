"""Assembling the per-experiment assessment report.

``assessment.json`` is byte-for-byte reproducible for fixed seeds except for
the ``metadata`` section, which carries wall-clock information.
"""

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from src import __version__
from src.assurance.budget import ErrorBudget
from src.assurance.recommend import DEFAULT_BUDGET_THRESHOLD, VariantAssessment, recommend
from src.plan.models import ExperimentPlan, ResponseVariableSpec
from src.sue.result import RunResult
from src.sue.topology import Topology
from src.telemetry.ledger import micro_to_seconds, render_seconds
from tools.logger import get_logger

from .detection import alert_latencies
from .overhead import overhead
from .plotdata import plot_rows, write_plotdata
from .response import LabeledObservation, extract_response, label_observations, trace_durations
from .visibility import Undetectable, VisibilityScore, visibility_score

logger = get_logger(__name__)


@dataclass(frozen=True)
class AnalysisSettings:
    alpha: float = 0.01
    beta: float = 0.6
    bin_width_s: int = 10
    budget_threshold: float = DEFAULT_BUDGET_THRESHOLD


def pooled_labels(
    runs: list[RunResult], spec: ResponseVariableSpec, entry: str, fault_window: tuple[int, int]
) -> list[LabeledObservation]:
    """Labeled observations of one variable, pooled over repetitions."""
    labeled: list[LabeledObservation] = []
    for run in runs:
        labeled += label_observations(extract_response(run, spec, entry), fault_window)
    return labeled


def score_variable(
    runs: list[RunResult],
    spec: ResponseVariableSpec,
    entry: str,
    fault_window: tuple[int, int],
    alpha: float,
    beta: float,
) -> VisibilityScore | Undetectable:
    labeled = pooled_labels(runs, spec, entry, fault_window)
    return visibility_score(labeled, alpha=alpha, beta=beta, direction=spec.direction)


def mean_latency(latencies: list[float | None]) -> float | None:
    """Mean over the repetitions in which the alert fired."""
    fired = [latency for latency in latencies if latency is not None]
    return sum(fired) / len(fired) if fired else None


def _mean_cpu_micro(runs: list[RunResult]) -> int:
    return round(sum(run.cost_ledger.total_micro for run in runs) / len(runs))


def group_runs(plan: ExperimentPlan, runs: list[RunResult]) -> dict[str, list[RunResult]]:
    """Runs per variant, in plan variant order and repetition order."""
    grouped: dict[str, list[RunResult]] = {v.name: [] for v in plan.effective_variants}
    for run in runs:
        grouped[run.variant].append(run)
    return grouped


def build_assessment(
    plan: ExperimentPlan,
    topology: Topology,
    runs: list[RunResult],
    settings: AnalysisSettings,
    budget: ErrorBudget | None = None,
) -> dict[str, Any]:
    """Analyse every variant and rank them.

    Args:
        plan: The executed plan
        topology: Its topology
        runs: Results of ``run_all``
        settings: Significance, accuracy and binning settings
        budget: Error budget for the recommendation (None = full budget)

    Returns:
        The report as plain data, ready for ``write_assessment``
    """
    fault_window = plan.phases.fault_window_or_default
    grouped = group_runs(plan, runs)
    baseline = plan.baseline_variant
    baseline_cpu = micro_to_seconds(_mean_cpu_micro(grouped[baseline]))

    variants = []
    candidates = []
    for variant in plan.effective_variants:
        variant_runs = grouped[variant.name]
        cpu_micro = _mean_cpu_micro(variant_runs)
        cost = overhead(baseline_cpu, micro_to_seconds(cpu_micro))

        scores = {
            spec.name: score_variable(variant_runs, spec, topology.entry, fault_window, settings.alpha, settings.beta)
            for spec in plan.response_variables
        }
        per_run = [alert_latencies(run.metric_series, run.config.alerts, fault_window[0]) for run in variant_runs]
        detection = {
            metric: {
                "latencies_s": [latencies[metric] for latencies in per_run],
                "latency_s": mean_latency([latencies[metric] for latencies in per_run]),
            }
            for metric in (sorted(per_run[0]) if per_run else [])
        }

        primary = scores[plan.response_variables[0].name] if plan.response_variables else None
        fired = [entry["latency_s"] for entry in detection.values() if entry["latency_s"] is not None]
        candidates.append(
            VariantAssessment(
                name=variant.name,
                visibility=primary.balanced_accuracy if primary is not None else None,
                detected=bool(primary is not None and primary.detected),
                detection_latency_s=min(fired) if fired else None,
                overhead_percent=cost.overhead_percent,
            )
        )
        variants.append(
            {
                "name": variant.name,
                "overrides": dict(sorted(variant.overrides.items())),
                "is_baseline": variant.name == baseline,
                "runs": [
                    {
                        "repetition": run.repetition,
                        "seed": run.seed,
                        "requests": run.requests,
                        "exported_traces": len(run.traces),
                        "exported_spans": run.exported_spans,
                        "cpu_s": run.cost_ledger.total_seconds,
                    }
                    for run in variant_runs
                ],
                "cpu_s": micro_to_seconds(cpu_micro),
                "cpu_rendered": render_seconds(cpu_micro),
                "overhead": cost.to_dict(),
                "visibility": {name: score.to_dict() for name, score in scores.items()},
                "detection": detection,
            }
        )

    recommendation = recommend(candidates, budget, settings.budget_threshold)
    logger.info(f"Assessed {len(variants)} variants of '{plan.id}', recommended '{recommendation.best}'")
    return {
        "plan_id": plan.id,
        "engine_version": __version__,
        "baseline": baseline,
        "response_variables": [spec.name for spec in plan.response_variables],
        "analysis": {
            "alpha": settings.alpha,
            "beta": settings.beta,
            "bin_width_s": settings.bin_width_s,
            "fault_window_s": list(fault_window),
            "duration_s": plan.duration_s,
        },
        "seeds": [{"variant": run.variant, "repetition": run.repetition, "seed": run.seed} for run in runs],
        "variants": variants,
        "recommendation": recommendation.to_dict(),
    }


def with_metadata(report: dict[str, Any], wall_clock_s: float) -> dict[str, Any]:
    """Attach the non-reproducible metadata section."""
    return {
        **report,
        "metadata": {
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z"),
            "wall_clock_s": round(wall_clock_s, 3),
        },
    }


def write_assessment(report: dict[str, Any], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_plot_files(
    plan: ExperimentPlan,
    topology: Topology,
    runs: list[RunResult],
    bin_width_s: int,
    out_dir: str | Path,
) -> list[Path]:
    """``plotdata/<variant>.csv`` of entry trace durations, pooled over repetitions."""
    service = next(
        (spec.service for spec in plan.response_variables if spec.source == "trace_duration" and spec.service),
        topology.entry,
    )
    paths = []
    for name, variant_runs in group_runs(plan, runs).items():
        observations = [obs for run in variant_runs for obs in trace_durations(run, service)]
        rows = plot_rows(observations, plan.duration_s, bin_width_s)
        paths.append(write_plotdata(rows, Path(out_dir) / "plotdata" / f"{name}.csv"))
    return paths
