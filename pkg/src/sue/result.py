"""Outcome of one seeded simulation run."""

from dataclasses import dataclass, field
from typing import Any

from src.telemetry.ledger import CostLedger, ResourceUsage
from src.telemetry.metrics import MetricSeries
from src.telemetry.spans import Trace
from src.treatments.base import InstrumentationConfig


@dataclass
class RunResult:
    """All telemetry of one run.

    Attributes:
        variant: Variant name
        seed: Run seed
        repetition: Repetition index within the variant
        duration_s: Run duration
        traces: Exported (post-sampling) traces in start order
        metric_series: Scraped series by name
        cost_ledger: Settled cpu costs
        event_log: Treatment activation/deactivation events in time order
        usage: Raw counters behind the ledger
        config: Effective instrumentation configuration
        requests: Requests issued (sampled or not)
        failed_requests: Requests whose root span errored
    """

    variant: str
    seed: int
    duration_s: int
    traces: list[Trace]
    metric_series: MetricSeries
    cost_ledger: CostLedger
    event_log: list[dict[str, Any]]
    usage: ResourceUsage
    config: InstrumentationConfig
    repetition: int = 0
    requests: int = 0
    failed_requests: int = 0
    span_count: int = field(default=0)

    @property
    def exported_spans(self) -> int:
        return sum(len(trace.spans) for trace in self.traces)

    def summary(self) -> dict[str, Any]:
        return {
            "variant": self.variant,
            "repetition": self.repetition,
            "seed": self.seed,
            "duration_s": self.duration_s,
            "requests": self.requests,
            "failed_requests": self.failed_requests,
            "spans": self.span_count,
            "exported_traces": len(self.traces),
            "exported_spans": self.exported_spans,
            "sampling_rate": self.config.sampling_rate,
            "scrape_interval_s": self.config.scrape_interval_s,
            "total_cpu_s": self.cost_ledger.total_seconds,
        }
