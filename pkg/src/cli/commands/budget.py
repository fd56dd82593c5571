"""``oxlab budget``: inspect and update the error-budget ledger."""

import argparse
from pathlib import Path

from src.assurance.budget import BudgetLedger, LedgerFile, LedgerMissingError, error_budget
from src.configs import Settings

from ..common import EXIT_OK, fail


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("budget", help="Show or update the error-budget ledger")
    parser.add_argument("--ledger", default=None, help="Ledger file (default: assurance.ledger_path)")
    actions = parser.add_subparsers(dest="action", required=True)

    actions.add_parser("show", help="Print total, consumed and remaining budget")

    record = actions.add_parser("record", help="Consume downtime of an incident")
    record.add_argument("minutes", type=float, help="Downtime in minutes")
    record.add_argument("--note", default="", help="Free-text note, e.g. the incident id")

    policy = actions.add_parser("set", help="Create the ledger or change its objective")
    policy.add_argument("target", type=float, help="Availability target, e.g. 0.999")
    policy.add_argument("days", type=int, help="Budget period in days")

    parser.set_defaults(handler=execute)


def render_ledger(ledger: LedgerFile) -> str:
    budget = error_budget(ledger.policy)
    lines = [
        f"target:     {ledger.target} over {ledger.period_days} days",
        f"total:      {budget.total_minutes:g} min",
        f"consumed:   {budget.consumed_minutes:g} min",
        f"remaining:  {budget.remaining_minutes:g} min ({budget.remaining_fraction:.1%})",
    ]
    if budget.exhausted:
        lines.append("state:      budget exhausted")
    if ledger.history:
        lines.append("history:")
        for entry in ledger.history:
            if entry.kind == "incident":
                note = f"  {entry.note}" if entry.note else ""
                lines.append(f"  {entry.recorded_at}  incident  {entry.minutes:g} min{note}")
            else:
                lines.append(f"  {entry.recorded_at}  set       target {entry.target} over {entry.period_days} days")
    return "\n".join(lines)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    ledger = BudgetLedger(Path(args.ledger or settings.get("assurance.ledger_path", "budget.json")))
    try:
        if args.action == "set":
            state = ledger.set_policy(args.target, args.days)
        elif args.action == "record":
            state = ledger.record(args.minutes, args.note)
        else:
            state = ledger.load()
    except (LedgerMissingError, ValueError) as e:
        return fail(str(e))

    print(render_ledger(state))
    return EXIT_OK
