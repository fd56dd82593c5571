import pytest

from src.treatments.base import DuplicateTreatmentError, TreatmentDescriptor, UnknownTreatmentError
from src.treatments.faults import NETWORK_DELAY, NoParams
from src.treatments.instrumentation import TRACE_SAMPLING_RATE
from src.treatments.registry import TreatmentRegistry, register_treatment
from src.treatments.spec import TargetKind, TreatmentKind

BUILTINS = [
    "network-delay",
    "packet-loss",
    "service-pause",
    "service-kill",
    "trace-sampling-rate",
    "metric-scrape-interval",
    "alert-threshold",
    "instrumentation-point",
]


def test_builtins_are_registered(registry):
    assert registry.names() == BUILTINS


def test_empty_registry():
    assert TreatmentRegistry(load_builtins=False).names() == []


def test_duplicate_name_is_rejected(registry):
    with pytest.raises(DuplicateTreatmentError, match="network-delay"):
        registry.register(NETWORK_DELAY)


def test_duplicate_override_key_is_rejected(registry):
    clash = TreatmentDescriptor(
        name="other-sampler",
        kind=TreatmentKind.INSTRUMENTATION,
        params_model=TRACE_SAMPLING_RATE.params_model,
        targets=frozenset({TargetKind.GLOBAL}),
        configure=TRACE_SAMPLING_RATE.configure,
        overrides={"trace_sampling_rate": "rate"},
    )

    with pytest.raises(DuplicateTreatmentError, match="trace_sampling_rate"):
        register_treatment(clash, registry)


def test_unknown_treatment_lists_the_available_ones(registry):
    with pytest.raises(UnknownTreatmentError, match="Available: network-delay"):
        registry.get("disk-full")


def test_override_keys(registry):
    keys = registry.override_keys()

    assert set(keys) == {
        "trace_sampling_rate",
        "metric_scrape_interval",
        "alert_threshold",
        "alert_consecutive_breaches",
        "instrumentation_point",
    }
    assert keys["alert_threshold"].name == "alert-threshold"


def test_resolve_qualified_override(registry):
    descriptor, param, qualifier = registry.resolve_override("alert_threshold.frontend.latency_mean_ms")

    assert descriptor.name == "alert-threshold"
    assert param == "threshold"
    assert qualifier == "frontend.latency_mean_ms"


def test_resolve_plain_override(registry):
    descriptor, param, qualifier = registry.resolve_override("trace_sampling_rate")

    assert (descriptor.name, param, qualifier) == ("trace-sampling-rate", "rate", None)


def test_resolve_unknown_override(registry):
    with pytest.raises(UnknownTreatmentError):
        registry.resolve_override("sampling")


def test_fault_needs_a_perturb_callback():
    with pytest.raises(ValueError, match="perturb"):
        TreatmentDescriptor(
            name="broken",
            kind=TreatmentKind.FAULT,
            params_model=NoParams,
            targets=frozenset({TargetKind.SERVICE}),
        )


def test_override_must_name_a_parameter():
    with pytest.raises(ValueError, match="unknown parameters"):
        TreatmentDescriptor(
            name="broken",
            kind=TreatmentKind.INSTRUMENTATION,
            params_model=NoParams,
            targets=frozenset({TargetKind.GLOBAL}),
            configure=lambda config, params, target: config,
            overrides={"broken_rate": "rate"},
        )


def test_params_errors_are_messages():
    errors = NETWORK_DELAY.params_errors({"min_ms": -1, "max_ms": 5})

    assert len(errors) == 1
    assert errors[0].startswith("min_ms:")
