"""Semantic validation of a parsed plan against its topology."""

from typing import Any

from src.common.errors import Violation
from src.sue.topology import Topology, topology_violations
from src.sue.workload import SpikeProfile
from src.telemetry.metrics import METRIC_NAMES
from src.treatments.base import TreatmentConflictError, UnknownTreatmentError
from src.treatments.registry import TreatmentRegistry, default_registry
from src.treatments.schedule import compile_treatments
from src.treatments.spec import TargetKind, TargetRef, TreatmentKind

from .models import ExperimentPlan


def series_exists(topology: Topology, series: str) -> bool:
    """Whether ``<service>.<metric>`` names a series the simulator emits."""
    service, _, metric = series.rpartition(".")
    return topology.service(service) is not None and metric in METRIC_NAMES


def _target_violations(target: TargetRef, topology: Topology, path: str) -> list[Violation]:
    if target.kind is TargetKind.SERVICE:
        if topology.service(str(target.service)) is None:
            return [Violation("UnknownTarget", path, f"service '{target.service}' is not in the topology")]
    elif target.kind is TargetKind.EDGE:
        if not topology.has_edge(str(target.caller), str(target.callee)):
            return [Violation("UnknownTarget", path, f"edge '{target}' is not in the topology")]
    return []


def _window_violations(window: tuple[int, int], total: int, path: str) -> list[Violation]:
    start, end = window
    if start < 0 or end > total:
        return [
            Violation("WindowOutOfRange", path, f"window [{start}, {end}) is outside [0, {total}]")
        ]
    return []


class _PlanChecker:
    def __init__(self, plan: ExperimentPlan, topology: Topology, registry: TreatmentRegistry):
        self.plan = plan
        self.topology = topology
        self.registry = registry
        self.violations: list[Violation] = []

    def add(self, code: str, path: str, message: str) -> None:
        self.violations.append(Violation(code, path, message))

    def check_phases(self) -> None:
        phases = self.plan.phases
        if phases.fault_window is not None:
            self.violations += _window_violations(phases.fault_window, phases.total, "phases.fault_window")
        profile = self.plan.workload.profile
        if isinstance(profile, SpikeProfile):
            self.violations += _window_violations(profile.window, phases.total, "workload.profile.window")

    def check_treatments(self) -> bool:
        """Check each treatment; returns False if any is unusable for compiling."""
        usable = True
        instrumentation: dict[tuple[str, str | None], tuple[int, str, dict[str, Any]]] = {}
        for i, spec in enumerate(self.plan.treatments):
            path = f"treatments[{i}]"
            if spec.name not in self.registry:
                self.add("UnknownTreatment", f"{path}.name", f"treatment '{spec.name}' is not registered")
                usable = False
                continue
            descriptor = self.registry.get(spec.name)
            if descriptor.kind is not spec.kind:
                self.add(
                    "KindMismatch",
                    f"{path}.kind",
                    f"'{spec.name}' is a {descriptor.kind.value} treatment, not {spec.kind.value}",
                )
                usable = False
                continue

            errors = descriptor.params_errors(spec.params)
            for message in errors:
                self.add("InvalidParams", f"{path}.params", message)
            usable = usable and not errors

            target = spec.target_ref
            if target.kind not in descriptor.targets:
                allowed = ", ".join(sorted(k.value for k in descriptor.targets))
                self.add(
                    "InvalidTargetKind",
                    f"{path}.target",
                    f"'{spec.name}' cannot target a {target.kind.value} (allowed: {allowed})",
                )
                usable = False
            else:
                target_errors = _target_violations(target, self.topology, f"{path}.target")
                self.violations += target_errors
                usable = usable and not target_errors

            if spec.kind is TreatmentKind.INSTRUMENTATION:
                if spec.window is not None:
                    self.add("UnexpectedWindow", f"{path}.window", "instrumentation treatments apply to the whole run")
                identity = descriptor.identity(spec.params, spec.target)
                previous = instrumentation.get((spec.name, identity))
                if previous is not None and previous[1:] != (spec.target, spec.params):
                    self.add(
                        "DuplicateInstrumentation",
                        path,
                        f"conflicts with treatments[{previous[0]}] of the same type and target",
                    )
                    usable = False
                instrumentation.setdefault((spec.name, identity), (i, spec.target, spec.params))
                if spec.name == "alert-threshold" and not errors:
                    metric = str(spec.params["metric"])
                    if not series_exists(self.topology, metric):
                        self.add("UnknownSeries", f"{path}.params.metric", f"series '{metric}' is not emitted")
            elif spec.window is not None:
                self.violations += _window_violations(spec.window, self.plan.duration_s, f"{path}.window")
        return usable

    def check_variants(self, compilable: bool) -> None:
        names = [v.name for v in self.plan.effective_variants]
        for j, variant in enumerate(self.plan.variants):
            known = True
            for key in variant.overrides:
                path = f"variants[{j}].overrides.{key}"
                try:
                    descriptor, _, qualifier = self.registry.resolve_override(key)
                except UnknownTreatmentError:
                    self.add("UnknownOverride", path, f"'{key}' is not a registered instrumentation parameter")
                    known = False
                    continue
                if qualifier is not None and descriptor.qualifier == "target":
                    if self.topology.service(qualifier) is None:
                        self.add("UnknownTarget", path, f"service '{qualifier}' is not in the topology")
                        known = False
                elif qualifier is not None and descriptor.name == "alert-threshold":
                    if not series_exists(self.topology, qualifier):
                        self.add("UnknownSeries", path, f"series '{qualifier}' is not emitted")
            if known and compilable:
                try:
                    compile_treatments(self.plan, variant, self.registry)
                except TreatmentConflictError as e:
                    self.add("InvalidOverride", f"variants[{j}].overrides", str(e))
        if self.plan.baseline is not None and self.plan.baseline not in names:
            self.add("UnknownBaseline", "baseline", f"baseline '{self.plan.baseline}' is not a variant")

    def check_response_variables(self) -> None:
        seen: set[str] = set()
        for i, spec in enumerate(self.plan.response_variables):
            path = f"response_variables[{i}]"
            if spec.name in seen:
                self.add("DuplicateResponseVariable", f"{path}.name", f"'{spec.name}' is declared twice")
            seen.add(spec.name)
            if spec.source == "trace_duration":
                if spec.service is not None and self.topology.service(spec.service) is None:
                    self.add("UnknownService", f"{path}.service", f"service '{spec.service}' is not in the topology")
            elif not series_exists(self.topology, str(spec.series)):
                self.add("UnknownSeries", f"{path}.series", f"series '{spec.series}' is not emitted")

    def check_baseline_cost(self) -> None:
        services = self.topology.services
        base = any(s.cpu.cpu_base_per_second > 0 for s in services)
        per_request = any(s.cpu.cpu_per_request > 0 for s in services) and self.plan.workload.profile.max_users > 0
        if not (base or per_request):
            self.add(
                "ZeroBaselineCost",
                "topology.services",
                "no service has cpu_base_per_second or cpu_per_request above 0, so overhead against the baseline is undefined",
            )


def validate_plan(
    plan: ExperimentPlan,
    topology: Topology,
    registry: TreatmentRegistry | None = None,
    check_cost: bool = True,
) -> list[Violation]:
    """Check a parsed plan against its topology and the treatment registry.

    Args:
        plan: Parsed plan
        topology: Topology the plan runs against
        registry: Treatment registry (defaults to the process-wide one)
        check_cost: Require a cost model under which the baseline CPU time is
            positive. Scenario replays measure no overhead and skip it.

    Returns:
        Violations in document order (empty = valid)
    """
    checker = _PlanChecker(plan, topology, registry if registry is not None else default_registry())
    checker.violations += topology_violations(topology)
    checker.check_phases()
    compilable = checker.check_treatments()
    checker.check_variants(compilable)
    checker.check_response_variables()
    if check_cost:
        checker.check_baseline_cost()
    return checker.violations
