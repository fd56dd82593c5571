"""Command-line interface (``oxlab run|compare|suite|budget|schema``)."""

from .main import build_parser, main

__all__ = ["build_parser", "main"]
