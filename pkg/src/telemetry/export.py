"""Stable on-disk format of one run.

A run directory holds:

- ``traces.jsonl``: one exported trace per line, keys sorted
- ``metrics.csv``: ``series,t,value`` rows sorted by series then time
- ``costs.json``: the cost ledger per service and in total
- ``events.json``: treatment activation/deactivation events
- ``summary.json``: run counters, seed and variant
"""

import csv
import json
from pathlib import Path
from typing import TYPE_CHECKING, Any

from tools.logger import get_logger

if TYPE_CHECKING:
    from src.sue.result import RunResult

logger = get_logger(__name__)


def _write_json(path: Path, data: Any) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def run_dir_name(run: "RunResult") -> str:
    return f"{run.variant}-rep{run.repetition}"


def write_traces(run: "RunResult", path: Path) -> None:
    with path.open("w", encoding="utf-8") as f:
        for trace in run.traces:
            f.write(json.dumps(trace.to_dict(), sort_keys=True) + "\n")


def write_metrics(run: "RunResult", path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["series", "t", "value"])
        for name in sorted(run.metric_series):
            for sample in run.metric_series[name]:
                writer.writerow([name, f"{sample.t:.3f}", f"{sample.value:.6f}"])


def write_run(run: "RunResult", out_dir: str | Path) -> Path:
    """Serialize a run into ``out_dir/<variant>-rep<k>/``.

    Returns:
        The run directory
    """
    run_dir = Path(out_dir) / run_dir_name(run)
    run_dir.mkdir(parents=True, exist_ok=True)
    write_traces(run, run_dir / "traces.jsonl")
    write_metrics(run, run_dir / "metrics.csv")
    _write_json(run_dir / "costs.json", run.cost_ledger.to_dict())
    _write_json(run_dir / "events.json", run.event_log)
    _write_json(run_dir / "summary.json", run.summary())
    logger.debug(f"Wrote run {run_dir_name(run)} to {run_dir}")
    return run_dir
