import pytest

from src.common.errors import PlanSchemaError, PlanSyntaxError
from src.plan.models import ExperimentPlan
from src.plan.parser import load_experiment, load_plan, parse_plan, serialize_plan

MINIMAL = """
version: 1
id: minimal
topology:
  entry: web
  services:
    - name: web
      base_latency: 10
workload:
  profile: {kind: constant, users: 1}
phases:
  steady: 60
"""


def test_defaults_are_applied():
    plan = parse_plan(MINIMAL)

    assert plan.treatments == []
    assert plan.repetitions == 1
    assert plan.base_seed == 0
    assert plan.duration_s == 60
    assert [v.name for v in plan.effective_variants] == ["default"]


def test_demo_plan_has_three_variants(demo_experiment):
    plan, _ = demo_experiment

    assert plan.duration_s == 600
    assert plan.phases.fault_window_or_default == (240, 360)
    assert plan.workload.profile.users == 50
    assert [v.name for v in plan.variants] == ["baseline", "A", "B"]
    assert [v.overrides["trace_sampling_rate"] for v in plan.variants] == [0.01, 0.05, 0.10]
    assert plan.baseline_variant == "baseline"


def test_duplicate_variant_names_are_rejected():
    text = MINIMAL + "variants:\n  - {name: A}\n  - {name: A}\n"

    with pytest.raises(PlanSchemaError, match="duplicate variant"):
        parse_plan(text)


def test_unknown_field_is_rejected_with_its_path():
    with pytest.raises(PlanSchemaError) as excinfo:
        parse_plan(MINIMAL + "sampling: 0.5\n")

    assert any(error["path"] == "sampling" for error in excinfo.value.errors)


def test_type_mismatch_is_rejected():
    with pytest.raises(PlanSchemaError) as excinfo:
        parse_plan(MINIMAL.replace("steady: 60", "steady: soon"))

    assert any(error["path"] == "phases.steady" for error in excinfo.value.errors)


def test_syntax_error_reports_position():
    with pytest.raises(PlanSyntaxError) as excinfo:
        parse_plan("version: 1\nid: [unclosed\n")

    assert excinfo.value.line is not None
    assert excinfo.value.column is not None


def test_version_is_required():
    with pytest.raises(PlanSchemaError):
        parse_plan(MINIMAL.replace("version: 1\n", ""))


def test_empty_fault_window_is_rejected():
    with pytest.raises(PlanSchemaError):
        parse_plan(MINIMAL.replace("steady: 60", "steady: 60\n  fault_window: [30, 30]"))


def test_serialize_round_trip(demo_experiment):
    plan, _ = demo_experiment

    assert parse_plan(serialize_plan(plan)) == plan


def test_round_trip_with_inline_topology():
    plan = parse_plan(MINIMAL)

    again = parse_plan(serialize_plan(plan))

    assert again == plan
    assert isinstance(again, ExperimentPlan)


def test_parse_is_pure():
    assert parse_plan(MINIMAL) == parse_plan(MINIMAL)


def test_missing_plan_file(tmp_path):
    with pytest.raises(FileNotFoundError, match="plan file not found"):
        load_plan(tmp_path / "absent.yaml")


def test_missing_topology_file_names_the_path(tmp_path):
    path = tmp_path / "plan.yaml"
    path.write_text(
        "version: 1\nid: lost\ntopology: nowhere.yaml\n"
        "workload:\n  profile: {kind: constant, users: 1}\nphases:\n  steady: 60\n"
    )

    with pytest.raises(FileNotFoundError, match="nowhere.yaml"):
        load_experiment(path)
