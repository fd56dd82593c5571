"""``oxlab schema``: print the JSON schema of a document format."""

import argparse

from src.configs import Settings
from src.plan.schema import render_schema

from ..common import EXIT_OK


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("schema", help="Print the JSON schema of plans, topologies or scenarios")
    parser.add_argument("--kind", choices=("plan", "topology", "scenario"), default="plan")
    parser.set_defaults(handler=execute)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    print(render_schema(args.kind))
    return EXIT_OK
