"""Binned trace-duration data for plotting, one CSV per variant."""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .response import Observation

PLOT_COLUMNS = ("bin_start_s", "mean_duration_ms", "p95_duration_ms", "n")


@dataclass(frozen=True)
class PlotRow:
    bin_start_s: int
    mean_duration_ms: float | None
    p95_duration_ms: float | None
    n: int


def plot_rows(observations: list[Observation], duration_s: int, bin_width_s: int) -> list[PlotRow]:
    """``floor(duration / bin_width)`` bins ``[i*w, (i+1)*w)``, empty bins included.

    Observations past the last full bin are left out.
    """
    if bin_width_s <= 0:
        raise ValueError(f"bin width must be positive, got {bin_width_s}")
    bins = duration_s // bin_width_s
    grouped: list[list[float]] = [[] for _ in range(bins)]
    for obs in observations:
        index = int(obs.t // bin_width_s)
        if 0 <= index < bins:
            grouped[index].append(obs.value)

    rows = []
    for index, values in enumerate(grouped):
        if values:
            array = np.asarray(values)
            rows.append(PlotRow(index * bin_width_s, float(array.mean()), float(np.percentile(array, 95)), len(values)))
        else:
            rows.append(PlotRow(index * bin_width_s, None, None, 0))
    return rows


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.3f}"


def write_plotdata(rows: list[PlotRow], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(PLOT_COLUMNS)
        for row in rows:
            writer.writerow([row.bin_start_s, _fmt(row.mean_duration_ms), _fmt(row.p95_duration_ms), row.n])
    return path
