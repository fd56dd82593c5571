"""``oxlab run``: execute a plan, analyse it and write the experiment artifacts."""

import argparse
import time
from pathlib import Path
from typing import Any

from src.analysis.assessment import build_assessment, with_metadata, write_assessment, write_plot_files
from src.assurance.budget import BudgetLedger, ErrorBudget
from src.common.errors import PlanError
from src.configs import Settings
from src.plan.parser import load_experiment
from src.plan.validator import validate_plan
from src.sue.runner import run_all
from src.sue.simulator import SimulationError
from src.telemetry.export import write_run
from tools.logger import get_logger

from ..common import EXIT_FAILURE, EXIT_OK, analysis_settings, fail, print_violations, resolve_seed

logger = get_logger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("run", help="Run an experiment plan and assess its variants")
    parser.add_argument("plan", help="Experiment plan YAML file")
    parser.add_argument("--out", default=None, help="Output directory (default: run.out_dir)")
    parser.add_argument("--seed", type=int, default=None, help="Base seed (overrides OXLAB_SEED and the plan)")
    parser.add_argument("--repetitions", type=int, default=None, help="Repetitions per variant")
    parser.add_argument("--jobs", type=int, default=None, help="Parallel runs (default: run.jobs)")
    parser.add_argument("--alpha", type=float, default=None, help="Significance level of the visibility test")
    parser.add_argument("--beta", type=float, default=None, help="Minimum balanced accuracy for detection")
    parser.add_argument("--bin-width", type=int, default=None, help="Plot-data bin width in seconds")
    parser.add_argument("--ledger", default=None, help="Error-budget ledger (default: assurance.ledger_path)")
    parser.set_defaults(handler=execute)


def _current_budget(path: Path) -> ErrorBudget | None:
    ledger = BudgetLedger(path)
    if not ledger.exists():
        logger.info(f"No budget ledger at {path}, assuming a full error budget")
        return None
    return ledger.budget()


def _cell(value: Any, width: int) -> str:
    return f"{value!s:>{width}}"


def render_table(report: dict[str, Any]) -> str:
    """Variants as columns; cpu time and overhead rows first."""
    variants = report["variants"]
    first_variable = report["response_variables"][0] if report["response_variables"] else None
    width = max(12, *(len(v["name"]) + 2 for v in variants))

    def row(label: str, values: list[Any]) -> str:
        return f"{label:<18}" + "".join(_cell(value, width) for value in values)

    lines = [row("", [v["name"] for v in variants])]
    lines.append(row("CPU time", [v["cpu_rendered"] for v in variants]))
    lines.append(row("Overhead", ["-" if v["is_baseline"] else v["overhead"]["rendered"] for v in variants]))
    if first_variable is not None:
        scores = [v["visibility"][first_variable] for v in variants]
        lines.append(
            row(
                "Visibility",
                ["n/a" if s["balanced_accuracy"] is None else f"{s['balanced_accuracy']:.3f}" for s in scores],
            )
        )
        lines.append(row("Detected", ["yes" if s["detected"] else "no" for s in scores]))
    if any(v["detection"] for v in variants):
        latencies = []
        for v in variants:
            fired = [d["latency_s"] for d in v["detection"].values() if d["latency_s"] is not None]
            latencies.append(f"{min(fired):g}s" if fired else "-")
        lines.append(row("Alert latency", latencies))

    recommendation = report["recommendation"]
    lines.append("")
    lines.append(f"Recommended: {recommendation['ranking'][0]['name']}")
    lines.append(recommendation["rationale"])
    return "\n".join(lines)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    try:
        plan, topology = load_experiment(args.plan)
    except (FileNotFoundError, PlanError) as e:
        return fail(str(e))

    violations = validate_plan(plan, topology)
    if violations:
        print_violations(violations)
        return fail(f"plan '{plan.id}' has {len(violations)} violation(s)")

    try:
        seed = resolve_seed(args.seed, settings, plan)
    except ValueError as e:
        return fail(str(e))
    if args.repetitions is not None and args.repetitions < 1:
        return fail("--repetitions must be at least 1")
    jobs = args.jobs if args.jobs is not None else int(settings.get("run.jobs", 1))
    if jobs < 1:
        return fail("--jobs must be at least 1")
    try:
        analysis = analysis_settings(settings, plan, args.alpha, args.beta, args.bin_width)
    except ValueError as e:
        return fail(str(e))
    out_dir = Path(args.out or settings.get("run.out_dir", "out"))
    ledger_path = Path(args.ledger or settings.get("assurance.ledger_path", "budget.json"))

    started = time.perf_counter()
    try:
        runs = run_all(plan, topology, jobs=jobs, base_seed=seed, repetitions=args.repetitions)
    except SimulationError as e:
        logger.error(f"Simulation failed: {e}")
        return fail(str(e), EXIT_FAILURE)

    for run in runs:
        write_run(run, out_dir / "runs")
    report = build_assessment(plan, topology, runs, analysis, _current_budget(ledger_path))
    write_assessment(with_metadata(report, time.perf_counter() - started), out_dir / "assessment.json")
    write_plot_files(plan, topology, runs, analysis.bin_width_s, out_dir)
    logger.info(f"Wrote {len(runs)} runs and the assessment to {out_dir}")

    print(render_table(report))
    return EXIT_OK
