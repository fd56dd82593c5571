"""Shared fixtures: bundled demo artifacts, tiny topologies and plan builders."""

from copy import deepcopy
from pathlib import Path
from typing import Any, Callable

import pytest

from src.plan.models import ExperimentPlan
from src.plan.parser import load_experiment
from src.sue.topology import Topology
from src.treatments.registry import TreatmentRegistry

REPO_ROOT = Path(__file__).resolve().parent.parent
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

TINY_TOPOLOGY: dict[str, Any] = {
    "entry": "frontend",
    "services": [
        {
            "name": "frontend",
            "base_latency": 5,
            "calls": ["backend"],
            "cpu": {
                "cpu_base_per_second": 0.1,
                "cpu_per_request": 0.001,
                "cpu_per_span_exported": 0.002,
                "cpu_per_metric_sample": 0.0005,
            },
        },
        {
            "name": "backend",
            "base_latency": {"kind": "uniform", "lo": 2, "hi": 8},
            "cpu": {
                "cpu_base_per_second": 0.05,
                "cpu_per_request": 0.001,
                "cpu_per_span_exported": 0.002,
                "cpu_per_metric_sample": 0.0005,
            },
        },
    ],
}

TINY_PLAN: dict[str, Any] = {
    "version": 1,
    "id": "tiny",
    "topology": TINY_TOPOLOGY,
    "workload": {"profile": {"kind": "constant", "users": 5}, "think_time": {"kind": "uniform", "lo": 50, "hi": 150}},
    "phases": {"ramp_up": 20, "steady": 20, "cool_down": 20},
    "treatments": [
        {
            "name": "network-delay",
            "kind": "fault",
            "target": "frontend->backend",
            "params": {"min_ms": 50, "max_ms": 60},
        },
        {"name": "trace-sampling-rate", "kind": "instrumentation", "params": {"rate": 0.5}},
        {"name": "metric-scrape-interval", "kind": "instrumentation", "params": {"seconds": 5}},
    ],
    "response_variables": [{"name": "trace-duration", "source": "trace_duration"}],
    "variants": [
        {"name": "low", "overrides": {"trace_sampling_rate": 0.2}},
        {"name": "high", "overrides": {"trace_sampling_rate": 0.8}},
    ],
    "base_seed": 11,
}


def merge(base: dict[str, Any], **changes: Any) -> dict[str, Any]:
    data = deepcopy(base)
    data.update(changes)
    return data


@pytest.fixture
def registry() -> TreatmentRegistry:
    """Fresh registry with the built-ins only."""
    return TreatmentRegistry()


@pytest.fixture
def tiny_topology() -> Topology:
    return Topology.model_validate(TINY_TOPOLOGY)


@pytest.fixture
def make_plan() -> Callable[..., ExperimentPlan]:
    """Build a plan from the tiny template, replacing top-level keys."""

    def build(**changes: Any) -> ExperimentPlan:
        return ExperimentPlan.model_validate(merge(TINY_PLAN, **changes))

    return build


@pytest.fixture
def tiny_plan(make_plan) -> ExperimentPlan:
    return make_plan()


@pytest.fixture(scope="session")
def demo_experiment() -> tuple[ExperimentPlan, Topology]:
    return load_experiment(REPO_ROOT / "plans" / "delay-demo.yaml")


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR
