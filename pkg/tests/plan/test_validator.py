import pytest

from src.plan.validator import series_exists, validate_plan


def codes(violations):
    return [v.code for v in violations]


def test_demo_plan_is_valid(demo_experiment):
    plan, topology = demo_experiment

    assert validate_plan(plan, topology) == []


def test_tiny_plan_is_valid(tiny_plan, tiny_topology):
    assert validate_plan(tiny_plan, tiny_topology) == []


def test_unknown_edge_target(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[
            {"name": "network-delay", "kind": "fault", "target": "frontend→nonexistent", "params": {"min_ms": 1, "max_ms": 2}}
        ]
    )

    violations = validate_plan(plan, tiny_topology)

    assert codes(violations) == ["UnknownTarget"]
    assert violations[0].path == "treatments[0].target"


def test_fault_window_outside_the_run(make_plan, tiny_topology):
    plan = make_plan(phases={"ramp_up": 200, "steady": 200, "cool_down": 200, "fault_window": [500, 700]})

    violations = validate_plan(plan, tiny_topology)

    assert codes(violations) == ["WindowOutOfRange"]
    assert violations[0].path == "phases.fault_window"


def test_treatment_window_outside_the_run(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[
            {
                "name": "network-delay",
                "kind": "fault",
                "target": "frontend->backend",
                "params": {"min_ms": 1, "max_ms": 2},
                "window": [50, 90],
            }
        ]
    )

    assert codes(validate_plan(plan, tiny_topology)) == ["WindowOutOfRange"]


def test_unknown_treatment(make_plan, tiny_topology):
    plan = make_plan(treatments=[{"name": "disk-full", "kind": "fault", "target": "backend"}])

    assert codes(validate_plan(plan, tiny_topology)) == ["UnknownTreatment"]


def test_kind_mismatch(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[{"name": "trace-sampling-rate", "kind": "fault", "params": {"rate": 0.1}}],
        variants=[],
    )

    assert codes(validate_plan(plan, tiny_topology)) == ["KindMismatch"]


def test_invalid_params(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[
            {"name": "network-delay", "kind": "fault", "target": "frontend->backend", "params": {"min_ms": 9, "max_ms": 2}}
        ]
    )

    assert codes(validate_plan(plan, tiny_topology)) == ["InvalidParams"]


def test_target_kind_must_match_the_treatment(make_plan, tiny_topology):
    plan = make_plan(treatments=[{"name": "service-kill", "kind": "fault", "target": "frontend->backend"}])

    assert codes(validate_plan(plan, tiny_topology)) == ["InvalidTargetKind"]


def test_instrumentation_takes_no_window(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[{"name": "trace-sampling-rate", "kind": "instrumentation", "params": {"rate": 0.1}, "window": [0, 10]}]
    )

    assert "UnexpectedWindow" in codes(validate_plan(plan, tiny_topology))


def test_conflicting_instrumentation(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[
            {"name": "trace-sampling-rate", "kind": "instrumentation", "params": {"rate": 0.1}},
            {"name": "trace-sampling-rate", "kind": "instrumentation", "params": {"rate": 0.2}},
        ],
        variants=[],
    )

    assert codes(validate_plan(plan, tiny_topology)) == ["DuplicateInstrumentation"]


def test_identical_instrumentation_duplicates_are_fine(make_plan, tiny_topology):
    rate = {"name": "trace-sampling-rate", "kind": "instrumentation", "params": {"rate": 0.1}}
    plan = make_plan(treatments=[rate, rate])

    assert validate_plan(plan, tiny_topology) == []


def test_alert_on_unknown_series(make_plan, tiny_topology):
    plan = make_plan(
        treatments=[
            {"name": "alert-threshold", "kind": "instrumentation", "params": {"metric": "frontend.p99", "threshold": 1}}
        ]
    )

    assert codes(validate_plan(plan, tiny_topology)) == ["UnknownSeries"]


def test_unknown_override_key(make_plan, tiny_topology):
    plan = make_plan(variants=[{"name": "x", "overrides": {"sampling": 0.2}}])

    violations = validate_plan(plan, tiny_topology)

    assert codes(violations) == ["UnknownOverride"]
    assert violations[0].path == "variants[0].overrides.sampling"


def test_override_that_breaks_the_schema(make_plan, tiny_topology):
    plan = make_plan(variants=[{"name": "x", "overrides": {"trace_sampling_rate": 1.5}}])

    assert codes(validate_plan(plan, tiny_topology)) == ["InvalidOverride"]


def test_override_of_an_unknown_service(make_plan, tiny_topology):
    plan = make_plan(variants=[{"name": "x", "overrides": {"instrumentation_point.cart": False}}])

    assert codes(validate_plan(plan, tiny_topology)) == ["UnknownTarget"]


def test_unknown_baseline(make_plan, tiny_topology):
    plan = make_plan(baseline="nope")

    assert codes(validate_plan(plan, tiny_topology)) == ["UnknownBaseline"]


def test_response_variable_checks(make_plan, tiny_topology):
    plan = make_plan(
        response_variables=[
            {"name": "d", "source": "trace_duration", "service": "cart"},
            {"name": "d", "source": "metric_series", "series": "backend.queue_depth"},
        ]
    )

    assert codes(validate_plan(plan, tiny_topology)) == [
        "UnknownService",
        "DuplicateResponseVariable",
        "UnknownSeries",
    ]


def test_topology_problems_are_reported(make_plan):
    from src.sue.topology import Topology

    broken = Topology.model_validate(
        {
            "entry": "a",
            "services": [
                {"name": "a", "base_latency": 1, "calls": ["b"], "cpu": {"cpu_base_per_second": 0.1}},
                {"name": "b", "base_latency": 1, "calls": ["a"]},
            ],
        }
    )
    plan = make_plan(topology=broken.model_dump(mode="json"), treatments=[], variants=[], response_variables=[])

    assert codes(validate_plan(plan, broken)) == ["CyclicCallGraph"]


def test_series_exists(tiny_topology):
    assert series_exists(tiny_topology, "backend.request_rate")
    assert series_exists(tiny_topology, "frontend.latency_mean_ms")
    assert not series_exists(tiny_topology, "backend.p99")
    assert not series_exists(tiny_topology, "cart.request_rate")


FREE_TOPOLOGY = {"entry": "frontend", "services": [{"name": "frontend", "base_latency": 5}]}


def test_cost_free_topology_is_rejected(make_plan):
    from src.sue.topology import Topology

    plan = make_plan(topology=FREE_TOPOLOGY, treatments=[], variants=[])

    violations = validate_plan(plan, Topology.model_validate(FREE_TOPOLOGY))

    assert codes(violations) == ["ZeroBaselineCost"]
    assert violations[0].path == "topology.services"


def test_per_request_cost_needs_traffic(make_plan):
    from src.sue.topology import Topology

    topology = {"entry": "frontend", "services": [{"name": "frontend", "base_latency": 5, "cpu": {"cpu_per_request": 0.001}}]}
    busy = make_plan(topology=topology, treatments=[], variants=[])
    idle = make_plan(
        topology=topology,
        treatments=[],
        variants=[],
        workload={"profile": {"kind": "constant", "users": 0}, "think_time": 100},
    )

    assert validate_plan(busy, Topology.model_validate(topology)) == []
    assert codes(validate_plan(idle, Topology.model_validate(topology))) == ["ZeroBaselineCost"]


def test_cost_check_can_be_skipped(make_plan):
    from src.sue.topology import Topology

    plan = make_plan(topology=FREE_TOPOLOGY, treatments=[], variants=[])

    assert validate_plan(plan, Topology.model_validate(FREE_TOPOLOGY), check_cost=False) == []


@pytest.mark.parametrize("seconds", [1e-7, 0.0005])
def test_scrape_interval_below_a_millisecond(make_plan, tiny_topology, seconds):
    plan = make_plan(
        treatments=[{"name": "metric-scrape-interval", "kind": "instrumentation", "params": {"seconds": seconds}}],
        variants=[],
    )

    assert codes(validate_plan(plan, tiny_topology)) == ["InvalidParams"]


def test_scrape_interval_override_below_a_millisecond(make_plan, tiny_topology):
    plan = make_plan(variants=[{"name": "x", "overrides": {"metric_scrape_interval": 1e-7}}])

    assert codes(validate_plan(plan, tiny_topology)) == ["InvalidOverride"]
