from src.sue.topology import CostParams
from src.telemetry.ledger import ResourceUsage, render_seconds, settle_costs, to_micro


def usage(requests=0, spans=0, samples=0, duration_s=10):
    costs = {"web": CostParams(cpu_base_per_second=0.1, cpu_per_request=0.001, cpu_per_span_exported=0.002)}
    result = ResourceUsage(duration_s=duration_s, costs=costs)
    counters = result.service("web")
    counters.requests, counters.exported_spans, counters.metric_samples = requests, spans, samples
    return result


def test_idle_service_pays_only_its_base_cost():
    ledger = settle_costs(usage())

    assert ledger.total_seconds == 1.0
    assert ledger.rendered_total == "1.00s"


def test_exported_spans_are_charged_linearly():
    few = settle_costs(usage(requests=100, spans=10))
    many = settle_costs(usage(requests=100, spans=60))

    assert many.total_micro - few.total_micro == 50 * to_micro(0.002)


def test_service_without_counters_still_pays_base():
    costs = {"a": CostParams(cpu_base_per_second=0.5), "b": CostParams(cpu_base_per_second=0.25)}

    ledger = settle_costs(ResourceUsage(duration_s=4, costs=costs))

    assert ledger.services["b"].total == 1_000_000
    assert ledger.total_seconds == 3.0


def test_to_micro_avoids_float_drift():
    assert to_micro(0.1) * 3 == to_micro(0.3)
    assert to_micro(0.0015) == 1500


def test_rendering():
    assert render_seconds(191_834_999) == "191.83s"
    assert render_seconds(5_000) == "0.00s"
    assert render_seconds(15_000) == "0.02s"


def test_ledger_dict():
    data = settle_costs(usage(requests=2, spans=1)).to_dict()

    assert data["total_cpu_micro"] == 1_004_000
    assert data["services"]["web"]["cpu_spans_s"] == 0.002
