"""Telemetry cost overhead relative to a baseline variant."""

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class OverheadReport:
    baseline_cpu: float
    variant_cpu: float
    overhead_percent: float

    @property
    def rendered(self) -> str:
        return f"{self.overhead_percent:+.2f}%"

    def to_dict(self) -> dict[str, Any]:
        return {
            "baseline_cpu_s": self.baseline_cpu,
            "variant_cpu_s": self.variant_cpu,
            "overhead_percent": self.overhead_percent,
            "rendered": self.rendered,
        }


def overhead(baseline_cpu: float, variant_cpu: float) -> OverheadReport:
    """``100 * (variant - baseline) / baseline`` rounded to 2 decimals.

    Raises:
        ValueError: baseline is not positive

    Example:
        >>> overhead(191.83, 197.68).rendered
        '+3.05%'
    """
    if baseline_cpu <= 0:
        raise ValueError(f"baseline cpu must be positive, got {baseline_cpu}")
    percent = round(100 * (variant_cpu - baseline_cpu) / baseline_cpu, 2)
    if percent == 0:
        percent = 0.0
    return OverheadReport(baseline_cpu, variant_cpu, percent)
