"""oxlab entry point.

Exit codes: 0 success, 1 experiment or assertion failure, 2 configuration or
validation error (argparse usage errors also exit with 2).
"""

import argparse
import sys

from src import __version__
from src.configs import Settings
from tools.logger import get_logger, setup_logging

from .commands import COMMANDS
from .common import EXIT_CONFIG, EXIT_FAILURE

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oxlab",
        description="Run observability experiments against a simulated microservice system",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Run the bundled demo and write artifacts to out/
  oxlab run plans/delay-demo.yaml --out out --seed 42

  # Replay incident scenarios under the suite variants
  oxlab suite scenarios --junit suite.xml

  # Track the error budget
  oxlab budget set 0.999 90
  oxlab budget record 30 --note INC-1042
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override logging.level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        settings = Settings()
        settings.validate()
    except ValueError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    setup_logging(args.log_level or settings.get("logging.level", "INFO"), settings.get("logging.format", "text"))

    try:
        return args.handler(args, settings)
    except Exception as e:
        logger.error(f"oxlab {args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
