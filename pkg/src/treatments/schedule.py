"""Compiling plan treatments and variant overrides into an immutable schedule."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Literal

import numpy as np
from pydantic import BaseModel, ValidationError

from tools.logger import get_logger

from .base import (
    NO_PERTURBATION,
    CallContext,
    CallPerturbation,
    InstrumentationConfig,
    TreatmentConflictError,
    TreatmentDescriptor,
)
from .registry import TreatmentRegistry, default_registry
from .spec import TargetKind, TargetRef, TreatmentKind, parse_target

if TYPE_CHECKING:
    from src.plan.models import ExperimentPlan, VariantSpec

logger = get_logger(__name__)

US_PER_S = 1_000_000


@dataclass(frozen=True)
class ScheduleEvent:
    """Activation or deactivation of a fault, in whole seconds."""

    t_s: int
    action: Literal["activate", "deactivate"]
    treatment: str
    target: str

    def to_dict(self) -> dict[str, Any]:
        return {"t_s": self.t_s, "action": self.action, "treatment": self.treatment, "target": self.target}


@dataclass(frozen=True)
class CompiledFault:
    """A fault with validated parameters and a window in virtual microseconds."""

    index: int
    descriptor: TreatmentDescriptor
    params: BaseModel
    target: TargetRef
    start_us: int
    end_us: int

    def is_active(self, t_us: int) -> bool:
        return self.start_us <= t_us < self.end_us

    def matches_call(self, caller: str | None, callee: str) -> bool:
        if self.target.kind is TargetKind.GLOBAL:
            return True
        return (
            self.target.kind is TargetKind.EDGE
            and self.target.caller == caller
            and self.target.callee == callee
        )

    def matches_service(self, service: str) -> bool:
        return self.target.kind is TargetKind.SERVICE and self.target.service == service


@dataclass(frozen=True)
class EffectiveInstrumentation:
    """An instrumentation treatment after variant overrides were applied."""

    name: str
    target: str
    params: dict[str, Any]


@dataclass(frozen=True)
class TreatmentSchedule:
    """Time-ordered fault events plus the static instrumentation configuration.

    Attributes:
        events: Fault activations/deactivations sorted by (time, deactivate
            first, declaration order)
        faults: Compiled faults in declaration order
        instrumentation: Whole-run observability configuration
        effective: Instrumentation treatments as finally applied
    """

    events: tuple[ScheduleEvent, ...] = ()
    faults: tuple[CompiledFault, ...] = ()
    instrumentation: InstrumentationConfig = field(default_factory=InstrumentationConfig)
    effective: tuple[EffectiveInstrumentation, ...] = ()

    def call_faults(self, caller: str | None, callee: str, t_us: int) -> list[CompiledFault]:
        """Edge and global faults active for a call issued at ``t_us``."""
        return [f for f in self.faults if f.is_active(t_us) and f.matches_call(caller, callee)]

    def service_faults(self, service: str, t_us: int) -> list[CompiledFault]:
        """Service faults active when a request reaches ``service`` at ``t_us``."""
        return [f for f in self.faults if f.is_active(t_us) and f.matches_service(service)]


def apply_fault(fault: CompiledFault, ctx: CallContext, rng: np.random.Generator) -> CallPerturbation:
    """Run a fault's perturbation callback for one call.

    The caller is responsible for only invoking this while ``fault`` is
    active at ``ctx.time_us``.
    """
    assert fault.descriptor.perturb is not None
    return fault.descriptor.perturb(fault.params, ctx, rng)


def merge_perturbations(perturbations: list[CallPerturbation]) -> CallPerturbation:
    """Combine the effects of several faults on one call: delays add, factors multiply."""
    if not perturbations:
        return NO_PERTURBATION
    if len(perturbations) == 1:
        return perturbations[0]
    defer = [p.defer_until_us for p in perturbations if p.defer_until_us is not None]
    factor = 1.0
    for p in perturbations:
        factor *= p.latency_factor
    return CallPerturbation(
        delay_us=sum(p.delay_us for p in perturbations),
        failed=any(p.failed for p in perturbations),
        defer_until_us=max(defer) if defer else None,
        latency_factor=factor,
    )


def _compile_faults(plan: "ExperimentPlan", registry: TreatmentRegistry) -> list[CompiledFault]:
    faults = []
    for index, spec in enumerate(plan.treatments):
        if spec.kind is not TreatmentKind.FAULT:
            continue
        descriptor = registry.get(spec.name)
        start_s, end_s = plan.window_of(spec) or plan.phases.fault_window_or_default
        faults.append(
            CompiledFault(
                index=index,
                descriptor=descriptor,
                params=descriptor.validate_params(spec.params),
                target=spec.target_ref,
                start_us=start_s * US_PER_S,
                end_us=end_s * US_PER_S,
            )
        )
    return faults


def _fault_events(faults: list[CompiledFault]) -> list[ScheduleEvent]:
    keyed = []
    for fault in faults:
        target = str(fault.target)
        start = ScheduleEvent(fault.start_us // US_PER_S, "activate", fault.descriptor.name, target)
        end = ScheduleEvent(fault.end_us // US_PER_S, "deactivate", fault.descriptor.name, target)
        # deactivations sort before activations at the same instant
        keyed.append(((fault.start_us, 1, fault.index), start))
        keyed.append(((fault.end_us, 0, fault.index), end))
    return [event for _, event in sorted(keyed, key=lambda item: item[0])]


@dataclass
class _Instrumentation:
    descriptor: TreatmentDescriptor
    target: str
    params: dict[str, Any]

    @property
    def identity(self) -> str | None:
        return self.descriptor.identity(self.params, self.target)


def _collect_instrumentation(plan: "ExperimentPlan", registry: TreatmentRegistry) -> list[_Instrumentation]:
    collected: dict[tuple[str, str | None], _Instrumentation] = {}
    for spec in plan.treatments:
        if spec.kind is not TreatmentKind.INSTRUMENTATION:
            continue
        item = _Instrumentation(registry.get(spec.name), spec.target, dict(spec.params))
        key = (spec.name, item.identity)
        existing = collected.get(key)
        if existing is None:
            collected[key] = item
        elif (existing.target, existing.params) != (item.target, item.params):
            label = spec.name if key[1] is None else f"{spec.name} ({key[1]})"
            raise TreatmentConflictError(f"conflicting instrumentation treatments for {label}")
    return list(collected.values())


def _apply_override(
    items: list[_Instrumentation], registry: TreatmentRegistry, key: str, value: Any
) -> None:
    descriptor, param, qualifier = registry.resolve_override(key)
    matches = [
        item
        for item in items
        if item.descriptor.name == descriptor.name and (qualifier is None or item.identity == qualifier)
    ]
    if matches:
        for item in matches:
            item.params[param] = value
        return

    target = "global"
    params: dict[str, Any] = {param: value}
    if qualifier is not None and descriptor.qualifier == "target":
        target = qualifier
    elif qualifier is not None and descriptor.qualifier is not None:
        params[descriptor.qualifier] = qualifier
    items.append(_Instrumentation(descriptor, target, params))


def compile_treatments(
    plan: "ExperimentPlan",
    variant: "VariantSpec",
    registry: TreatmentRegistry | None = None,
) -> TreatmentSchedule:
    """Merge plan treatments with a variant's overrides into a schedule.

    Variant overrides patch instrumentation parameters (variant wins). An
    override for a treatment the plan does not declare instantiates it with
    only the overridden parameter set, so it must be valid on its own.

    Args:
        plan: Validated experiment plan
        variant: Variant whose overrides apply
        registry: Treatment registry (defaults to the process-wide one)

    Returns:
        Immutable schedule

    Raises:
        TreatmentConflictError: two instrumentation treatments of the same
            type and target disagree, or an override yields invalid parameters
    """
    registry = registry if registry is not None else default_registry()

    faults = _compile_faults(plan, registry)
    items = _collect_instrumentation(plan, registry)
    for key in sorted(variant.overrides):
        _apply_override(items, registry, key, variant.overrides[key])

    config = InstrumentationConfig()
    effective = []
    for item in sorted(items, key=lambda i: (i.descriptor.name, i.identity or "", i.target)):
        try:
            params = item.descriptor.validate_params(item.params)
        except ValidationError as e:
            raise TreatmentConflictError(
                f"variant '{variant.name}' leaves '{item.descriptor.name}' with invalid parameters: {e}"
            ) from e
        assert item.descriptor.configure is not None
        config = item.descriptor.configure(config, params, parse_target(item.target))
        effective.append(EffectiveInstrumentation(item.descriptor.name, item.target, params.model_dump()))

    schedule = TreatmentSchedule(
        events=tuple(_fault_events(faults)),
        faults=tuple(faults),
        instrumentation=config,
        effective=tuple(effective),
    )
    logger.debug(
        f"Compiled variant '{variant.name}': {len(faults)} faults, "
        f"sampling={config.sampling_rate}, scrape={config.scrape_interval_s}s"
    )
    return schedule
