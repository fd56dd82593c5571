import pytest

from src.sue.topology import CostParams
from src.telemetry.metrics import METRIC_NAMES, MetricAccumulator

COSTS = {"web": CostParams(cpu_base_per_second=0.1, cpu_per_request=0.001, cpu_per_span_exported=0.002)}


def accumulator(duration_s, interval_s):
    return MetricAccumulator(["web"], COSTS, duration_s * 1_000_000, interval_s)


def values(series, name):
    return [s.value for s in series[f"web.{name}"]]


def test_scrape_times():
    series = accumulator(600, 15).scrape()

    times = [s.t for s in series["web.request_rate"]]
    assert len(times) == 40
    assert times[0] == 15
    assert times[-1] == 600
    assert sorted(series) == sorted(f"web.{m}" for m in METRIC_NAMES)


def test_interval_longer_than_the_run():
    acc = accumulator(10, 15)

    assert all(samples == [] for samples in acc.scrape().values())
    assert acc.samples_per_service() == 0


def test_nonpositive_interval():
    with pytest.raises(ValueError):
        accumulator(10, 0)


def test_interval_below_one_microsecond():
    with pytest.raises(ValueError, match="at least 1us"):
        accumulator(10, 1e-7)


def test_completion_is_counted_in_the_interval_it_ends():
    acc = accumulator(20, 5)
    acc.record_span("web", 1_000_000, 3_000_000, False, True)  # ends at 4s
    acc.record_span("web", 3_000_000, 2_000_000, True, False)  # ends at 5s exactly

    series = acc.scrape()

    assert values(series, "request_rate") == [0.2, 0.2, 0.0, 0.0]
    assert values(series, "error_rate") == [0.0, 0.2, 0.0, 0.0]
    assert values(series, "latency_mean_ms") == [3000.0, 2000.0, 0.0, 0.0]


def test_in_flight_is_observed_at_scrape_instants():
    acc = accumulator(20, 5)
    acc.record_span("web", 4_000_000, 7_000_000, False, False)  # [4s, 11s)
    acc.record_span("web", 0, 5_000_000, False, False)  # [0s, 5s)

    assert values(acc.scrape(), "in_flight") == [1.0, 1.0, 0.0, 0.0]


def test_back_to_back_requests_keep_one_in_flight():
    acc = accumulator(10, 1)
    for k in range(1001):
        acc.record_span("web", k * 10_000, 10_000, False, False)

    assert values(acc.scrape(), "in_flight") == [1.0] * 10


def test_cpu_series_charges_base_requests_and_exported_spans():
    acc = accumulator(10, 5)
    acc.record_span("web", 0, 1_000_000, False, True)
    acc.record_span("web", 0, 2_000_000, False, False)

    assert values(acc.scrape(), "cpu_seconds") == [pytest.approx(0.504), pytest.approx(0.5)]
