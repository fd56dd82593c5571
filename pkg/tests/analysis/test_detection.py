from src.analysis.detection import alert_latencies, detection_latency
from src.telemetry.metrics import MetricSample
from src.treatments.base import AlertRule


def step_series(fault_start=240, after=100.0, before=10.0, interval=15, duration=600):
    return [
        MetricSample("web.latency_mean_ms", t, after if t > fault_start else before)
        for t in range(interval, duration + 1, interval)
    ]


def test_two_consecutive_breaches():
    assert detection_latency(step_series(), AlertRule("web.latency_mean_ms", 50, 2), 240) == 30


def test_single_breach_fires_on_the_first_scrape():
    assert detection_latency(step_series(), AlertRule("web.latency_mean_ms", 50, 1), 240) == 15


def test_threshold_above_every_value_never_fires():
    assert detection_latency(step_series(), AlertRule("web.latency_mean_ms", 500, 1), 240) is None


def test_breach_must_be_strict():
    assert detection_latency(step_series(), AlertRule("web.latency_mean_ms", 100, 1), 240) is None


def test_breaches_before_the_fault_count_toward_the_run():
    series = step_series(fault_start=210)

    assert detection_latency(series, AlertRule("web.latency_mean_ms", 50, 2), 240) == 0


def test_alert_latencies_by_metric():
    series = {"web.latency_mean_ms": step_series()}
    alerts = [AlertRule("web.latency_mean_ms", 50, 2), AlertRule("web.error_rate", 0, 1)]

    assert alert_latencies(series, alerts, 240) == {"web.latency_mean_ms": 30, "web.error_rate": None}
