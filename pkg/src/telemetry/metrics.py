"""Scraped per-service metric series.

Every service exposes five series, sampled at ``t = k * interval`` for
``k = 1 .. floor(duration / interval)``:

- ``<svc>.request_rate``: spans completed in the interval, per second
- ``<svc>.error_rate``: errored spans completed in the interval, per second
- ``<svc>.latency_mean_ms``: mean duration of those spans (0 when none)
- ``<svc>.in_flight``: spans open at the scrape instant
- ``<svc>.cpu_seconds``: cpu charged in the interval (base, requests, exported spans)
"""

from dataclasses import dataclass

import numpy as np

from src.sue.topology import CostParams

from .ledger import MICRO, to_micro

METRIC_NAMES = ("request_rate", "error_rate", "latency_mean_ms", "in_flight", "cpu_seconds")


@dataclass(frozen=True)
class MetricSample:
    series: str
    t: float
    value: float


MetricSeries = dict[str, list[MetricSample]]


def scrape_count(duration_us: int, interval_us: int) -> int:
    """Number of scrapes in a run; scrapes happen at t > 0 only."""
    return duration_us // interval_us


class _ServiceCounters:
    def __init__(self, scrapes: int):
        self.completed = np.zeros(scrapes, dtype=np.int64)
        self.errors = np.zeros(scrapes, dtype=np.int64)
        self.duration_us = np.zeros(scrapes, dtype=np.int64)
        self.exported = np.zeros(scrapes, dtype=np.int64)
        # in_flight[k] = diff[1..k] summed; index 0 is unused
        self.in_flight_diff = np.zeros(scrapes + 2, dtype=np.int64)


class MetricAccumulator:
    """Collects span completions during a run and renders the scraped series.

    Args:
        services: Service names in topology order
        costs: Cost parameters per service
        duration_us: Run duration
        interval_s: Scrape interval in seconds (at least 1us after rounding)
    """

    def __init__(self, services: list[str], costs: dict[str, CostParams], duration_us: int, interval_s: float):
        interval_us = round(interval_s * MICRO)
        if interval_us < 1:
            raise ValueError(f"scrape interval must be at least 1us, got {interval_s}s")
        self.services = list(services)
        self.costs = costs
        self.interval_us = interval_us
        self.scrapes = scrape_count(duration_us, self.interval_us)
        self._counters = {name: _ServiceCounters(self.scrapes) for name in self.services}

    def record_span(self, service: str, start_us: int, duration_us: int, error: bool, exported: bool) -> None:
        counters = self._counters[service]
        end_us = start_us + duration_us
        bucket = end_us // self.interval_us
        if bucket < self.scrapes:
            counters.completed[bucket] += 1
            counters.errors[bucket] += int(error)
            counters.duration_us[bucket] += duration_us
            counters.exported[bucket] += int(exported)

        # scrape k observes the span iff start <= k*I < end
        first = max(1, -(-start_us // self.interval_us))
        last = min(self.scrapes, -(-end_us // self.interval_us) - 1)
        if first <= last:
            counters.in_flight_diff[first] += 1
            counters.in_flight_diff[last + 1] -= 1

    def samples_per_service(self) -> int:
        return len(METRIC_NAMES) * self.scrapes

    def scrape(self) -> MetricSeries:
        """Render all series, keyed by series name."""
        interval_s = self.interval_us / MICRO
        times = [k * self.interval_us / MICRO for k in range(1, self.scrapes + 1)]
        series: MetricSeries = {}
        for name in self.services:
            c = self._counters[name]
            params = self.costs[name]
            in_flight = np.cumsum(c.in_flight_diff)[1 : self.scrapes + 1]
            base_micro = to_micro(params.cpu_base_per_second) * self.interval_us // MICRO
            cpu_micro = (
                base_micro
                + to_micro(params.cpu_per_request) * c.completed
                + to_micro(params.cpu_per_span_exported) * c.exported
            )
            values = {
                "request_rate": [n / interval_s for n in c.completed.tolist()],
                "error_rate": [n / interval_s for n in c.errors.tolist()],
                "latency_mean_ms": [
                    (d / n / 1000 if n else 0.0) for d, n in zip(c.duration_us.tolist(), c.completed.tolist())
                ],
                "in_flight": [float(v) for v in in_flight.tolist()],
                "cpu_seconds": [v / MICRO for v in np.broadcast_to(cpu_micro, (self.scrapes,)).tolist()],
            }
            for metric in METRIC_NAMES:
                key = f"{name}.{metric}"
                series[key] = [MetricSample(key, t, v) for t, v in zip(times, values[metric])]
        return series
