import numpy as np
import pytest

from src.plan.models import DEFAULT_VARIANT, VariantSpec
from src.treatments.base import (
    AlertRule,
    CallContext,
    CallPerturbation,
    InstrumentationConfig,
    TreatmentConflictError,
)
from src.treatments.schedule import ScheduleEvent, apply_fault, compile_treatments, merge_perturbations

SAMPLING = {"name": "trace-sampling-rate", "kind": "instrumentation", "params": {"rate": 0.01}}


def delay(window):
    return {
        "name": "network-delay",
        "kind": "fault",
        "target": "frontend->backend",
        "params": {"min_ms": 1, "max_ms": 2},
        "window": window,
    }


def test_variant_override_wins(make_plan):
    plan = make_plan(treatments=[SAMPLING], variants=[{"name": "B", "overrides": {"trace_sampling_rate": 0.10}}])

    schedule = compile_treatments(plan, plan.variants[0])

    assert schedule.instrumentation.sampling_rate == 0.10


def test_no_treatments_gives_the_default_configuration(make_plan):
    plan = make_plan(treatments=[], variants=[])

    schedule = compile_treatments(plan, DEFAULT_VARIANT)

    assert schedule.events == ()
    assert schedule.faults == ()
    assert schedule.instrumentation == InstrumentationConfig()


def test_disjoint_fault_windows_give_ordered_events(make_plan):
    plan = make_plan(treatments=[delay([30, 40]), delay([10, 20])], variants=[])

    schedule = compile_treatments(plan, DEFAULT_VARIANT)

    assert [(e.t_s, e.action) for e in schedule.events] == [
        (10, "activate"),
        (20, "deactivate"),
        (30, "activate"),
        (40, "deactivate"),
    ]


def test_deactivation_sorts_before_activation_at_the_same_instant(make_plan):
    plan = make_plan(treatments=[delay([30, 40]), delay([10, 30])], variants=[])

    events = compile_treatments(plan, DEFAULT_VARIANT).events

    assert events[1] == ScheduleEvent(30, "deactivate", "network-delay", "frontend->backend")
    assert events[2].action == "activate"


def test_fault_without_window_uses_the_plan_fault_window(tiny_plan):
    fault = compile_treatments(tiny_plan, tiny_plan.variants[0]).faults[0]

    assert (fault.start_us, fault.end_us) == (20_000_000, 40_000_000)
    assert fault.is_active(20_000_000)
    assert not fault.is_active(40_000_000)


def test_conflicting_duplicates(make_plan):
    other = {**SAMPLING, "params": {"rate": 0.5}}
    plan = make_plan(treatments=[SAMPLING, other], variants=[])

    with pytest.raises(TreatmentConflictError, match="trace-sampling-rate"):
        compile_treatments(plan, DEFAULT_VARIANT)


def test_override_of_an_undeclared_treatment_instantiates_it(make_plan):
    variant = VariantSpec(name="v", overrides={"alert_threshold.frontend.latency_mean_ms": 80})
    plan = make_plan(treatments=[], variants=[variant.model_dump()])

    config = compile_treatments(plan, variant).instrumentation

    assert config.alerts == (AlertRule("frontend.latency_mean_ms", 80, 1),)


def test_qualified_override_patches_only_the_matching_alert(make_plan):
    alerts = [
        {"name": "alert-threshold", "kind": "instrumentation", "params": {"metric": m, "threshold": 100}}
        for m in ("frontend.latency_mean_ms", "backend.latency_mean_ms")
    ]
    variant = VariantSpec(name="v", overrides={"alert_threshold.backend.latency_mean_ms": 20})
    plan = make_plan(treatments=alerts, variants=[variant.model_dump()])

    config = compile_treatments(plan, variant).instrumentation

    assert config.alerts == (
        AlertRule("backend.latency_mean_ms", 20, 1),
        AlertRule("frontend.latency_mean_ms", 100, 1),
    )


def test_instrumentation_point_override_disables_a_service(make_plan):
    variant = VariantSpec(name="v", overrides={"instrumentation_point.backend": False})
    plan = make_plan(variants=[variant.model_dump()])

    config = compile_treatments(plan, variant).instrumentation

    assert config.disabled_services == frozenset({"backend"})


def test_invalid_override_value(make_plan):
    variant = VariantSpec(name="v", overrides={"trace_sampling_rate": 2})
    plan = make_plan(variants=[variant.model_dump()])

    with pytest.raises(TreatmentConflictError, match="invalid parameters"):
        compile_treatments(plan, variant)


def test_merge_perturbations():
    merged = merge_perturbations(
        [
            CallPerturbation(delay_us=10, latency_factor=2.0),
            CallPerturbation(delay_us=5, defer_until_us=100, latency_factor=1.5),
            CallPerturbation(failed=True, defer_until_us=50),
        ]
    )

    assert merged == CallPerturbation(delay_us=15, failed=True, defer_until_us=100, latency_factor=3.0)


def test_merge_nothing_is_neutral():
    assert merge_perturbations([]) == CallPerturbation()


def test_compiled_fault_applies_only_inside_its_window(make_plan):
    fault = delay([10, 20])
    fault["params"] = {"min_ms": 1, "max_ms": 2, "distribution": "constant"}
    schedule = compile_treatments(make_plan(treatments=[fault], variants=[]), DEFAULT_VARIANT)

    active = schedule.call_faults("frontend", "backend", 15_000_000)
    ctx = CallContext(15_000_000, "frontend", "backend", 10_000_000, 20_000_000)

    assert [apply_fault(f, ctx, np.random.default_rng(0)) for f in active] == [CallPerturbation(delay_us=2000)]
    assert schedule.call_faults("frontend", "backend", 20_000_000) == []
    assert schedule.call_faults("backend", "frontend", 15_000_000) == []
