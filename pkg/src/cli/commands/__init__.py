"""Subcommands of the oxlab CLI; each module provides ``register`` and ``execute``."""

from . import budget, compare, run, schema, suite

COMMANDS = (run, compare, suite, budget, schema)

__all__ = ["COMMANDS"]
