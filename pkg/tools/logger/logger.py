"""Structured logging for the engine.

Run context (variant, repetition, seed) travels as ``extra={"context": {...}}``
and is rendered by both formatters.
"""

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Literal

TEXT_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
TEXT_DATEFMT = "%Y-%m-%d %H:%M:%S"


def _context(record: logging.LogRecord) -> dict[str, Any] | None:
    return getattr(record, "context", None) or None


class JSONFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "function": record.funcName,
            "line": record.lineno,
        }
        context = _context(record)
        if context:
            entry["context"] = context
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


class ContextTextFormatter(logging.Formatter):
    """Plain text line with the context appended as sorted ``key=value`` pairs."""

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        context = _context(record)
        if context:
            line += " [" + " ".join(f"{key}={value}" for key, value in sorted(context.items())) + "]"
        return line


def _formatter(format_type: str) -> logging.Formatter:
    if format_type == "json":
        return JSONFormatter()
    return ContextTextFormatter(fmt=TEXT_FORMAT, datefmt=TEXT_DATEFMT)


def setup_logging(level: str = "INFO", format_type: Literal["json", "text"] = "json") -> None:
    """Route all engine logs to one stderr handler.

    stdout is left to command output (tables, schemas, JSON), so it stays
    parseable whatever the log level.

    Args:
        level: DEBUG, INFO, WARNING or ERROR
        format_type: ``json`` or ``text``
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_formatter(format_type))

    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper()))

    logging.getLogger("filelock").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """Module logger; pass ``__name__``."""
    return logging.getLogger(name)
