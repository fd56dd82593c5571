"""``oxlab suite``: replay incident scenarios under every design variant."""

import argparse
from pathlib import Path

from src.assurance.scenarios import (
    SUITE_CONFIG_NAME,
    SuiteConfig,
    SuiteReport,
    load_scenarios,
    load_suite_config,
    run_scenario_suite,
    write_junit,
)
from src.common.errors import PlanError
from src.common.yamlio import validate_model
from src.configs import Settings
from src.configs.settings import PROJECT_ROOT
from src.sue.topology import load_topology
from tools.logger import get_logger

from ..common import analysis_settings, fail

logger = get_logger(__name__)

DEFAULT_TOPOLOGY = PROJECT_ROOT / "plans" / "astronomy-lite.yaml"


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("suite", help="Run the incident scenario regression suite")
    parser.add_argument("scenarios", help="Directory of scenario YAML files")
    parser.add_argument("--topology", default=DEFAULT_TOPOLOGY, help="Topology file (default: the bundled plans/astronomy-lite.yaml)")
    parser.add_argument("--variants", default=None, help=f"Suite variant config (default: <scenarios>/{SUITE_CONFIG_NAME})")
    parser.add_argument("--current", default=None, help="Variant whose failures fail the suite")
    parser.add_argument("--junit", default=None, help="Write a junit XML summary here")
    parser.add_argument("--alpha", type=float, default=None, help="Significance level of the visibility test")
    parser.add_argument("--beta", type=float, default=None, help="Minimum balanced accuracy for detection")
    parser.set_defaults(handler=execute)


def render_report(report: SuiteReport, variants: list[str]) -> str:
    width = max(10, *(len(name) + 2 for name in variants))
    name_width = max([8] + [len(outcome.name) + 2 for outcome in report.outcomes])
    header = f"{'scenario':<{name_width}}" + "".join(
        f"{name + ('*' if name == report.current else ''):>{width}}" for name in variants
    )
    lines = [header]
    for outcome in report.outcomes:
        if outcome.source.errors:
            lines.append(f"{outcome.name:<{name_width}}INVALID")
            lines += [f"  {error}" for error in outcome.source.errors]
            continue
        cells = {case.variant: ("pass" if case.passed else "FAIL") for case in outcome.cases}
        lines.append(f"{outcome.name:<{name_width}}" + "".join(f"{cells.get(v, '-'):>{width}}" for v in variants))
        for case in outcome.cases:
            if not case.passed:
                lines.append(f"  {case.variant}: {'; '.join(case.checks)}")
    failures = report.current_failures
    lines.append("")
    if report.invalid:
        lines.append(f"{len(report.invalid)} invalid scenario(s)")
    if failures:
        lines.append(f"current variant '{report.current}' fails: {', '.join(case.scenario for case in failures)}")
    elif not report.invalid:
        lines.append(f"current variant '{report.current}' passes every scenario")
    return "\n".join(lines)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    directory = Path(args.scenarios)
    variants_path = Path(args.variants) if args.variants else directory / SUITE_CONFIG_NAME
    try:
        topology = load_topology(args.topology)
        suite = load_suite_config(variants_path)
        if args.current is not None:
            suite = validate_model(SuiteConfig, {**suite.model_dump(mode="json"), "current": args.current})
        scenarios = load_scenarios(directory, exclude=(variants_path,))
    except (FileNotFoundError, PlanError) as e:
        return fail(str(e))

    try:
        analysis = analysis_settings(settings, alpha=args.alpha, beta=args.beta)
    except ValueError as e:
        return fail(str(e))
    report = run_scenario_suite(scenarios, topology, suite, analysis.alpha, analysis.beta)

    junit_path = args.junit or settings.get("assurance.junit_path")
    if junit_path:
        write_junit(report, junit_path)
        logger.info(f"Wrote junit summary to {junit_path}")

    print(render_report(report, [variant.name for variant in suite.variants]))
    return report.exit_code
