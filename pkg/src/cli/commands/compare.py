"""``oxlab compare``: visibility and overhead deltas across experiments."""

import argparse
import json

from src.analysis.compare import Comparison, IncompatibleAssessmentsError, compare_assessments, load_assessment
from src.configs import Settings

from ..common import EXIT_OK, fail


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("compare", help="Compare assessment.json files of several experiments")
    parser.add_argument("assessments", nargs="+", help="Two or more assessment.json files")
    parser.add_argument("--json", action="store_true", help="Emit the comparison as JSON")
    parser.set_defaults(handler=execute)


def _fmt(value: float | None, signed: bool = False) -> str:
    if value is None:
        return "n/a"
    return f"{value:+.3f}" if signed else f"{value:.3f}"


def render_comparison(comparison: Comparison) -> str:
    lines = [f"experiments: {', '.join(comparison.plan_ids)} (baseline '{comparison.baseline}')"]
    for row in comparison.rows:
        lines.append("")
        lines.append(f"[{row.slot}] {' -> '.join(row.names)}")
        for name, values in row.visibility.items():
            trail = " / ".join(_fmt(v) for v in values)
            lines.append(f"  visibility {name:<20} {trail}  delta {_fmt(row.visibility_delta[name], signed=True)}")
        trail = " / ".join(f"{v:+.2f}%" for v in row.overhead)
        lines.append(f"  overhead   {'':<20} {trail}  delta {row.overhead_delta:+.2f}pp")
    return "\n".join(lines)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    if len(args.assessments) < 2:
        return fail("compare needs at least two assessment files")
    try:
        comparison = compare_assessments([load_assessment(path) for path in args.assessments])
    except (FileNotFoundError, json.JSONDecodeError, KeyError, IncompatibleAssessmentsError) as e:
        return fail(str(e))

    if args.json:
        print(json.dumps(comparison.to_dict(), indent=2, sort_keys=True))
    else:
        print(render_comparison(comparison))
    return EXIT_OK
