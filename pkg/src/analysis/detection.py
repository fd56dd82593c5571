"""Alert-based detection latency."""

from typing import Sequence

from src.telemetry.metrics import MetricSample
from src.treatments.base import AlertRule


def detection_latency(
    series: Sequence[MetricSample], alert: AlertRule, fault_start: float
) -> float | None:
    """Seconds from fault onset until the alert fires.

    The alert fires at the first scrape ``t >= fault_start`` that completes a
    run of ``consecutive_breaches`` scrapes strictly above the threshold.
    Runs are counted over the whole series, so breaches just before the
    fault start count toward the run.

    Returns:
        ``t_alert - fault_start``, or None if the alert never fires
    """
    run = 0
    for sample in series:
        run = run + 1 if sample.value > alert.threshold else 0
        if sample.t >= fault_start and run >= alert.consecutive_breaches:
            return sample.t - fault_start
    return None


def alert_latencies(
    metric_series: dict[str, list[MetricSample]], alerts: Sequence[AlertRule], fault_start: float
) -> dict[str, float | None]:
    """Detection latency of every alert, keyed by its metric (unknown series never fire)."""
    return {
        alert.metric: detection_latency(metric_series.get(alert.metric, []), alert, fault_start)
        for alert in alerts
    }
