import pytest

from src.analysis.response import (
    Label,
    Observation,
    UnknownSeriesError,
    aggregate_series,
    extract_response,
    label_counts,
    label_observations,
    trace_durations,
)
from src.plan.models import ExperimentPlan, ResponseVariableSpec
from src.sue.simulator import simulate_run
from src.sue.topology import Topology
from tests.conftest import TINY_PLAN, TINY_TOPOLOGY


@pytest.fixture(scope="module")
def tiny_run():
    plan = ExperimentPlan.model_validate(TINY_PLAN)
    return simulate_run(plan, Topology.model_validate(TINY_TOPOLOGY), plan.variants[1], 4)


def test_window_boundaries():
    series = [Observation(t, 1.0) for t in (239.9, 240.0, 359.9, 360.0)]

    labels = [obs.label for obs in label_observations(series, (240, 360))]

    assert labels == [Label.NORMAL, Label.FAULT, Label.FAULT, Label.NORMAL]


def test_label_counts():
    labeled = label_observations([Observation(t, 0.0) for t in range(10)], (2, 5))

    assert label_counts(labeled) == {"fault": 3, "normal": 7}


def test_aggregation_windows():
    series = [Observation(0.5, 1.0), Observation(9.0, 3.0), Observation(25.0, 10.0)]

    assert aggregate_series(series, 10) == [Observation(0.0, 2.0), Observation(20.0, 10.0)]
    assert aggregate_series(series, 0) == series


def test_entry_trace_durations_are_root_durations(tiny_run):
    observations = trace_durations(tiny_run, "frontend")

    assert len(observations) == len(tiny_run.traces)
    assert observations[0].value == tiny_run.traces[0].root_duration_us / 1000


def test_downstream_trace_durations_use_that_service(tiny_run):
    observations = trace_durations(tiny_run, "backend")

    assert len(observations) == len(tiny_run.traces)
    assert all(2 <= obs.value <= 8 for obs in observations)


def test_metric_source(tiny_run):
    spec = ResponseVariableSpec(name="rate", source="metric_series", series="frontend.request_rate")

    observations = extract_response(tiny_run, spec, "frontend")

    assert [obs.t for obs in observations] == [5.0 * k for k in range(1, 13)]


def test_unknown_series(tiny_run):
    spec = ResponseVariableSpec(name="x", source="metric_series", series="frontend.p99")

    with pytest.raises(UnknownSeriesError, match="frontend.p99"):
        extract_response(tiny_run, spec, "frontend")


def test_trace_source_is_time_ordered(tiny_run):
    spec = ResponseVariableSpec(name="d", source="trace_duration", aggregation_window_s=5)

    observations = extract_response(tiny_run, spec, "frontend")

    assert [obs.t for obs in observations] == sorted(obs.t for obs in observations)
    assert [obs.t for obs in observations][:12] == [5.0 * k for k in range(12)]
