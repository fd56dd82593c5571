import pytest

from src.common.errors import PlanSchemaError
from src.sue.topology import ConstantDist, Topology, load_topology, parse_topology, topology_violations


def codes(topology):
    return [v.code for v in topology_violations(topology)]


def build(*services, entry="a"):
    return Topology.model_validate({"entry": entry, "services": list(services)})


def test_bundled_topology_is_valid(demo_experiment):
    _, topology = demo_experiment

    assert topology_violations(topology) == []
    assert topology.entry == "frontend"
    assert topology.has_edge("recommendation", "product-catalog")


def test_number_is_a_constant_latency():
    topology = build({"name": "a", "base_latency": 12})

    assert topology.services[0].base_latency == ConstantDist(value=12)


def test_cycle_is_reported():
    topology = build({"name": "a", "base_latency": 1, "calls": ["b"]}, {"name": "b", "base_latency": 1, "calls": ["a"]})

    assert codes(topology) == ["CyclicCallGraph"]


def test_unknown_callee_and_entry():
    topology = build({"name": "a", "base_latency": 1, "calls": ["ghost"]}, entry="web")

    assert codes(topology) == ["UnknownEntry", "UnknownCallee"]


def test_duplicate_service_and_parallel_call():
    topology = build(
        {"name": "a", "base_latency": 1, "calls": [{"callee": "b", "sequential": False}]},
        {"name": "b", "base_latency": 1},
        {"name": "b", "base_latency": 2},
    )

    assert codes(topology) == ["DuplicateService", "ParallelCallUnsupported"]


def test_uniform_bounds_are_checked():
    with pytest.raises(PlanSchemaError):
        parse_topology("entry: a\nservices:\n  - {name: a, base_latency: {kind: uniform, lo: 5, hi: 1}}\n")


def test_missing_topology_file(tmp_path):
    with pytest.raises(FileNotFoundError, match="topology file not found"):
        load_topology(tmp_path / "none.yaml")
