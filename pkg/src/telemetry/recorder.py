"""Per-run telemetry pipeline: sampling, span export, metric accumulation and usage counters."""

from src.sue.topology import Topology
from src.treatments.base import InstrumentationConfig

from .ledger import ResourceUsage
from .metrics import MetricAccumulator, MetricSeries
from .sampling import head_sample
from .spans import Span, SpanNode, Trace


class TraceRecorder:
    """Receives every completed call tree of a run.

    Metrics see every span regardless of sampling. Traces are head-sampled as
    a whole; spans of services whose instrumentation point is disabled are
    not emitted and their children are attached to the nearest emitted
    ancestor. A trace whose root service is disabled is not exported.

    Args:
        topology: Simulated topology
        config: Whole-run instrumentation configuration
        duration_us: Run duration
        sampler_seed: Seed of the head sampler
    """

    def __init__(self, topology: Topology, config: InstrumentationConfig, duration_us: int, sampler_seed: int):
        self.config = config
        self.sampler_seed = sampler_seed
        costs = {spec.name: spec.cpu for spec in topology.services}
        self.metrics = MetricAccumulator(topology.service_names, costs, duration_us, config.scrape_interval_s)
        self.usage = ResourceUsage(duration_s=duration_us // 1_000_000, costs=costs)
        for name in topology.service_names:
            self.usage.service(name)
        self.traces: list[Trace] = []
        self.requests = 0
        self.failed_requests = 0

    def _export(self, trace_id: int, root: SpanNode) -> list[Span]:
        disabled = self.config.disabled_services
        if root.service in disabled:
            return []
        spans: list[Span] = []

        def visit(node: SpanNode, parent: int | None) -> None:
            emitted = node.service not in disabled
            if emitted:
                spans.append(
                    Span(trace_id, node.span_id, parent, node.service, node.start_us, node.duration_us, node.error)
                )
            for child in node.children:
                visit(child, node.span_id if emitted else parent)

        visit(root, None)
        return spans

    def record(self, trace_id: int, root: SpanNode) -> bool:
        """Account one finished request; returns whether its trace was exported."""
        self.requests += 1
        self.failed_requests += int(root.error)
        sampled = head_sample(trace_id, self.config.sampling_rate, self.sampler_seed)
        exported = self._export(trace_id, root) if sampled else []
        exported_ids = {span.span_id for span in exported}

        for node in root.walk():
            is_exported = node.span_id in exported_ids
            counters = self.usage.service(node.service)
            counters.requests += 1
            counters.exported_spans += int(is_exported)
            self.metrics.record_span(node.service, node.start_us, node.duration_us, node.error, is_exported)

        if exported:
            self.traces.append(Trace(trace_id, tuple(exported)))
        return bool(exported)

    def finish(self) -> MetricSeries:
        """Close the run: charge metric samples and return the scraped series."""
        for name in self.metrics.services:
            self.usage.service(name).metric_samples = self.metrics.samples_per_service()
        return self.metrics.scrape()
