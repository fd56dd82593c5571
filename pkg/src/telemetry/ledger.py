"""Telemetry cost ledger in integer micro-cpu-seconds."""

from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Any

from src.sue.topology import CostParams

MICRO = 1_000_000


def to_micro(cpu_seconds: float) -> int:
    """Convert a decimal cpu-second figure to integer micro-cpu-seconds without float drift."""
    return int((Decimal(str(cpu_seconds)) * MICRO).to_integral_value(rounding=ROUND_HALF_EVEN))


def micro_to_seconds(micro: int) -> float:
    return micro / MICRO


def render_seconds(micro: int) -> str:
    """Two-decimal rendering, e.g. ``191.83s``."""
    value = (Decimal(micro) / MICRO).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN)
    return f"{value}s"


@dataclass
class ServiceUsage:
    """Counters the cost model charges for one service."""

    requests: int = 0
    exported_spans: int = 0
    metric_samples: int = 0


@dataclass
class ResourceUsage:
    """Everything :func:`settle_costs` needs from a finished run."""

    duration_s: int
    costs: dict[str, CostParams]
    services: dict[str, ServiceUsage] = field(default_factory=dict)

    def service(self, name: str) -> ServiceUsage:
        return self.services.setdefault(name, ServiceUsage())


@dataclass(frozen=True)
class ServiceCost:
    cpu_base: int
    cpu_requests: int
    cpu_spans: int
    cpu_metrics: int

    @property
    def total(self) -> int:
        return self.cpu_base + self.cpu_requests + self.cpu_spans + self.cpu_metrics

    def to_dict(self) -> dict[str, Any]:
        return {
            "cpu_base_s": micro_to_seconds(self.cpu_base),
            "cpu_requests_s": micro_to_seconds(self.cpu_requests),
            "cpu_spans_s": micro_to_seconds(self.cpu_spans),
            "cpu_metrics_s": micro_to_seconds(self.cpu_metrics),
            "total_s": micro_to_seconds(self.total),
        }


@dataclass(frozen=True)
class CostLedger:
    """Per-service cpu components; every amount is integer micro-cpu-seconds."""

    services: dict[str, ServiceCost]

    @property
    def total_micro(self) -> int:
        return sum(cost.total for cost in self.services.values())

    @property
    def total_seconds(self) -> float:
        return micro_to_seconds(self.total_micro)

    @property
    def rendered_total(self) -> str:
        return render_seconds(self.total_micro)

    def to_dict(self) -> dict[str, Any]:
        return {
            "services": {name: cost.to_dict() for name, cost in sorted(self.services.items())},
            "total_cpu_s": self.total_seconds,
            "total_cpu_micro": self.total_micro,
            "total_rendered": self.rendered_total,
        }


def settle_costs(usage: ResourceUsage) -> CostLedger:
    """Apply the linear cost model to a run's usage counters.

    Only exported spans are charged ``cpu_per_span_exported``; spans of
    disabled instrumentation points or dropped by sampling cost nothing.
    """
    services = {}
    for name, params in usage.costs.items():
        counters = usage.services.get(name, ServiceUsage())
        services[name] = ServiceCost(
            cpu_base=to_micro(params.cpu_base_per_second) * usage.duration_s,
            cpu_requests=to_micro(params.cpu_per_request) * counters.requests,
            cpu_spans=to_micro(params.cpu_per_span_exported) * counters.exported_spans,
            cpu_metrics=to_micro(params.cpu_per_metric_sample) * counters.metric_samples,
        )
    return CostLedger(services)
