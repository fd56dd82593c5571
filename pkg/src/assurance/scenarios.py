"""Postmortem incident scenarios and the regression suite that replays them.

A scenario file captures a past incident as a plan fragment (workload,
phases and fault treatments) plus the expectations the observability setup
must meet. The suite config (``variants.yaml``) provides the instrumentation
treatments and the variants every scenario is replayed under, and names the
variant currently deployed. Only failures of that variant fail the suite.
"""

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.analysis.assessment import score_variable
from src.analysis.detection import alert_latencies
from src.analysis.visibility import NO_DATA_VERDICT, Undetectable, VisibilityScore
from src.common.errors import PlanError, Violation
from src.common.yamlio import load_yaml_mapping, validate_model
from src.plan.models import ExperimentPlan, PhaseSchedule, ResponseVariableSpec, VariantSpec
from src.plan.validator import validate_plan
from src.sue.simulator import SimulationError, simulate_run
from src.sue.topology import Topology
from src.sue.workload import WorkloadSpec
from src.treatments.registry import TreatmentRegistry
from src.treatments.spec import TreatmentKind, TreatmentSpec
from tools.logger import get_logger

logger = get_logger(__name__)

SUITE_CONFIG_NAME = "variants.yaml"


class Postmortem(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    incident_id: str
    owner: str = ""
    root_cause: str = ""


class MustDetect(BaseModel):
    """The variable's fault must be detected, and alerted within ``max_latency_s`` if given."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    type: Literal["must_detect"]
    variable: str
    max_latency_s: float | None = Field(None, ge=0)


class MustScore(BaseModel):
    """The variable must reach a minimum balanced accuracy."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    type: Literal["must_score"]
    variable: str
    min_balanced_accuracy: float = Field(ge=0, le=1)


Expectation = Annotated[Union[MustDetect, MustScore], Field(discriminator="type")]


class IncidentScenario(BaseModel):
    """A past incident turned into a replayable experiment."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    version: Literal[1] = 1
    id: str = Field(min_length=1)
    description: str = ""
    postmortem: Postmortem | None = None
    workload: WorkloadSpec
    phases: PhaseSchedule
    treatments: list[TreatmentSpec] = Field(min_length=1)
    response_variables: list[ResponseVariableSpec] = Field(min_length=1)
    expectations: list[Expectation] = Field(min_length=1)
    seed: int = Field(0, ge=0, lt=2**64)


class SuiteConfig(BaseModel):
    """Variants every scenario is replayed under.

    Attributes:
        current: Variant deployed today; its failures fail the suite
        treatments: Instrumentation treatments added to every scenario
        variants: Design alternatives (instrumentation overrides)
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    current: str
    treatments: list[TreatmentSpec] = Field(default_factory=list)
    variants: list[VariantSpec] = Field(min_length=1)

    @model_validator(mode="after")
    def _current_declared(self) -> "SuiteConfig":
        names = [variant.name for variant in self.variants]
        if len(set(names)) != len(names):
            raise ValueError("variant names must be unique")
        if self.current not in names:
            raise ValueError(f"current variant '{self.current}' is not declared")
        if any(t.kind is not TreatmentKind.INSTRUMENTATION for t in self.treatments):
            raise ValueError("suite treatments must be instrumentation treatments")
        return self


@dataclass
class LoadedScenario:
    """A scenario file: the parsed scenario, or why it could not be used."""

    path: Path
    scenario: IncidentScenario | None = None
    errors: list[str] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.scenario.id if self.scenario is not None else self.path.stem

    @property
    def valid(self) -> bool:
        return self.scenario is not None and not self.errors


def parse_scenario(text: str) -> IncidentScenario:
    return validate_model(IncidentScenario, load_yaml_mapping(text))


def load_scenarios(directory: str | Path, exclude: tuple[Path, ...] = ()) -> list[LoadedScenario]:
    """Read every ``*.yaml`` scenario in ``directory`` (sorted by file name).

    Files that fail to parse are returned with their errors instead of
    aborting the load. The suite config file is skipped.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"scenario directory not found: {directory}")
    skipped = {path.resolve() for path in exclude}
    loaded = []
    for path in sorted(directory.glob("*.yaml")):
        if path.name == SUITE_CONFIG_NAME or path.resolve() in skipped:
            continue
        try:
            loaded.append(LoadedScenario(path, parse_scenario(path.read_text(encoding="utf-8"))))
        except PlanError as e:
            logger.warning(f"Skipping malformed scenario {path.name}")
            loaded.append(LoadedScenario(path, errors=[str(e)]))
    return loaded


def load_suite_config(path: str | Path) -> SuiteConfig:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"suite variant config not found: {path}")
    return validate_model(SuiteConfig, load_yaml_mapping(path.read_text(encoding="utf-8")))


def scenario_plan(scenario: IncidentScenario, topology: Topology, suite: SuiteConfig) -> ExperimentPlan:
    """The experiment plan a scenario is replayed with: one repetition at the scenario seed."""
    return ExperimentPlan(
        version=1,
        id=scenario.id,
        description=scenario.description,
        topology=topology,
        workload=scenario.workload,
        phases=scenario.phases,
        treatments=[*scenario.treatments, *suite.treatments],
        response_variables=scenario.response_variables,
        variants=suite.variants,
        base_seed=scenario.seed,
    )


def scenario_violations(
    scenario: IncidentScenario,
    topology: Topology,
    suite: SuiteConfig,
    registry: TreatmentRegistry | None = None,
) -> list[Violation]:
    """Semantic problems of a scenario replayed under the suite config."""
    violations = []
    for i, treatment in enumerate(scenario.treatments):
        if treatment.kind is not TreatmentKind.FAULT:
            violations.append(
                Violation("NotAFault", f"treatments[{i}]", f"scenario treatment '{treatment.name}' is not a fault")
            )
    variables = {spec.name for spec in scenario.response_variables}
    for i, expectation in enumerate(scenario.expectations):
        if expectation.variable not in variables:
            violations.append(
                Violation(
                    "UnknownResponseVariable",
                    f"expectations[{i}].variable",
                    f"'{expectation.variable}' is not a response variable of the scenario",
                )
            )
    violations += validate_plan(scenario_plan(scenario, topology, suite), topology, registry, check_cost=False)
    return violations


@dataclass(frozen=True)
class CaseResult:
    """Outcome of one (scenario, variant) pair."""

    scenario: str
    variant: str
    passed: bool
    verdict: str
    checks: tuple[str, ...] = ()


@dataclass
class ScenarioOutcome:
    source: LoadedScenario
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.source.name


@dataclass
class SuiteReport:
    current: str
    outcomes: list[ScenarioOutcome]

    @property
    def invalid(self) -> list[ScenarioOutcome]:
        return [outcome for outcome in self.outcomes if not outcome.source.valid]

    @property
    def current_failures(self) -> list[CaseResult]:
        return [
            case
            for outcome in self.outcomes
            for case in outcome.cases
            if case.variant == self.current and not case.passed
        ]

    @property
    def exit_code(self) -> int:
        """2 if any scenario is invalid, 1 if the current variant fails one, else 0."""
        if self.invalid:
            return 2
        return 1 if self.current_failures else 0

    def matrix(self) -> dict[str, dict[str, bool]]:
        """Pass/fail per scenario and variant (invalid scenarios have no cells)."""
        return {outcome.name: {case.variant: case.passed for case in outcome.cases} for outcome in self.outcomes}


def _describe(score: VisibilityScore) -> str:
    return f"balanced accuracy {score.balanced_accuracy:.3f}, p {score.p_value:.3g}"


def _check_expectation(
    expectation: MustDetect | MustScore,
    score: VisibilityScore | Undetectable,
    alert_latency_s: float | None,
) -> str | None:
    """Failure message of one expectation, or None when it holds."""
    if isinstance(score, Undetectable):
        return f"{expectation.variable}: {NO_DATA_VERDICT}"
    if isinstance(expectation, MustScore):
        if score.balanced_accuracy < expectation.min_balanced_accuracy:
            return (
                f"{expectation.variable}: balanced accuracy {score.balanced_accuracy:.3f} "
                f"< {expectation.min_balanced_accuracy}"
            )
        return None
    if not score.detected:
        return f"{expectation.variable}: not detected ({_describe(score)})"
    if expectation.max_latency_s is not None:
        if alert_latency_s is None:
            return f"{expectation.variable}: no alert fired"
        if alert_latency_s > expectation.max_latency_s:
            return f"{expectation.variable}: alert after {alert_latency_s:g}s > {expectation.max_latency_s:g}s"
    return None


def run_case(
    scenario: IncidentScenario,
    plan: ExperimentPlan,
    topology: Topology,
    variant: VariantSpec,
    alpha: float,
    beta: float,
    registry: TreatmentRegistry | None = None,
) -> CaseResult:
    """Replay a scenario under one variant and evaluate its expectations."""
    run = simulate_run(plan, topology, variant, scenario.seed, registry)
    fault_window = plan.phases.fault_window_or_default
    latencies = alert_latencies(run.metric_series, run.config.alerts, fault_window[0])
    fired = [latency for latency in latencies.values() if latency is not None]
    alert_latency = min(fired) if fired else None

    specs = {spec.name: spec for spec in plan.response_variables}
    failures = []
    for expectation in scenario.expectations:
        score = score_variable([run], specs[expectation.variable], topology.entry, fault_window, alpha, beta)
        failure = _check_expectation(expectation, score, alert_latency)
        if failure is not None:
            failures.append(failure)

    verdict = failures[0].split(": ", 1)[1] if failures else "pass"
    return CaseResult(scenario.id, variant.name, not failures, verdict, tuple(failures))


def run_scenario_suite(
    scenarios: list[LoadedScenario],
    topology: Topology,
    suite: SuiteConfig,
    alpha: float = 0.01,
    beta: float = 0.6,
    registry: TreatmentRegistry | None = None,
) -> SuiteReport:
    """Replay every valid scenario under every suite variant.

    Args:
        scenarios: Loaded scenario files; invalid ones are reported, not run
        topology: Topology the scenarios run against
        suite: Suite variants and instrumentation
        alpha: Significance level for visibility checks
        beta: Minimum balanced accuracy for detection
        registry: Treatment registry (defaults to the process-wide one)

    Returns:
        The pass/fail matrix; ``exit_code`` gives the CI status
    """
    outcomes = []
    for loaded in scenarios:
        outcome = ScenarioOutcome(loaded)
        outcomes.append(outcome)
        if loaded.scenario is None:
            continue
        violations = scenario_violations(loaded.scenario, topology, suite, registry)
        if violations:
            loaded.errors += [str(v) for v in violations]
            continue
        plan = scenario_plan(loaded.scenario, topology, suite)
        for variant in suite.variants:
            try:
                case = run_case(loaded.scenario, plan, topology, variant, alpha, beta, registry)
            except SimulationError as e:
                loaded.errors.append(str(e))
                break
            outcome.cases.append(case)
            logger.info(
                f"Scenario '{case.scenario}' under '{case.variant}': {'pass' if case.passed else 'FAIL'}",
                extra={"context": {"scenario": case.scenario, "variant": case.variant, "verdict": case.verdict}},
            )
    return SuiteReport(suite.current, outcomes)


def junit_xml(report: SuiteReport) -> ET.ElementTree:
    """JUnit-style summary: one testsuite per scenario, one testcase per variant."""
    root = ET.Element("testsuites", name="oxlab-suite")
    for outcome in report.outcomes:
        suite = ET.SubElement(root, "testsuite", name=outcome.name)
        failures = 0
        for case in outcome.cases:
            testcase = ET.SubElement(suite, "testcase", classname=outcome.name, name=case.variant)
            if not case.passed:
                failures += 1
                failure = ET.SubElement(testcase, "failure", message=case.verdict)
                failure.text = "\n".join(case.checks)
        errors = 0
        if outcome.source.errors:
            errors = 1
            testcase = ET.SubElement(suite, "testcase", classname=outcome.name, name="validation")
            error = ET.SubElement(testcase, "error", message="invalid scenario")
            error.text = "\n".join(outcome.source.errors)
        suite.set("tests", str(len(outcome.cases) + errors))
        suite.set("failures", str(failures))
        suite.set("errors", str(errors))
    return ET.ElementTree(root)


def write_junit(report: SuiteReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tree = junit_xml(report)
    ET.indent(tree)
    tree.write(path, encoding="utf-8", xml_declaration=True)
    return path


def suite_summary(report: SuiteReport) -> dict[str, Any]:
    return {
        "current": report.current,
        "exit_code": report.exit_code,
        "matrix": report.matrix(),
        "invalid": {outcome.name: outcome.source.errors for outcome in report.invalid},
    }
