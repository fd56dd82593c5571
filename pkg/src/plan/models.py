"""Experiment plan data model."""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.sue.topology import Topology
from src.sue.workload import WorkloadSpec
from src.treatments.spec import TreatmentKind, TreatmentSpec

MAX_SEED = 2**64


class PhaseSchedule(BaseModel):
    """Experiment timeline in whole seconds.

    ``ramp_up + steady + cool_down`` is the total duration. The fault window
    defaults to the steady phase.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    ramp_up: int = Field(0, ge=0)
    steady: int = Field(gt=0)
    cool_down: int = Field(0, ge=0)
    fault_window: tuple[int, int] | None = None

    @model_validator(mode="after")
    def _window_not_empty(self) -> "PhaseSchedule":
        if self.fault_window is not None and self.fault_window[1] <= self.fault_window[0]:
            raise ValueError(f"fault window {list(self.fault_window)} is empty")
        return self

    @property
    def total(self) -> int:
        return self.ramp_up + self.steady + self.cool_down

    @property
    def fault_window_or_default(self) -> tuple[int, int]:
        if self.fault_window is not None:
            return self.fault_window
        return (self.ramp_up, self.ramp_up + self.steady)


class VariantSpec(BaseModel):
    """Named set of instrumentation parameter overrides.

    Keys are registered override keys, optionally qualified:
    ``trace_sampling_rate``, ``alert_threshold.frontend.latency_mean_ms``,
    ``instrumentation_point.cart``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    overrides: dict[str, Any] = Field(default_factory=dict)


class ResponseVariableSpec(BaseModel):
    """Observable compared between fault and normal periods.

    Attributes:
        name: Identifier used in reports
        source: ``trace_duration`` (root span durations of the entry service)
            or ``metric_series`` (a scraped series)
        service: Service whose traces are measured (defaults to the entry)
        series: Series name ``<service>.<metric>`` for metric sources
        aggregation_window_s: 0 keeps raw observations; otherwise per-window means
        direction: Side a fault is expected to move the values
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    source: Literal["trace_duration", "metric_series"]
    service: str | None = None
    series: str | None = None
    aggregation_window_s: int = Field(0, ge=0)
    direction: Literal["increase", "decrease"] = "increase"

    @model_validator(mode="after")
    def _source_fields(self) -> "ResponseVariableSpec":
        if self.source == "metric_series" and not self.series:
            raise ValueError("metric_series response variables need 'series'")
        if self.source == "trace_duration" and self.series:
            raise ValueError("trace_duration response variables take 'service', not 'series'")
        return self


class AnalysisSpec(BaseModel):
    """Per-plan analysis settings; unset values fall back to the engine config."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: float | None = Field(None, gt=0, lt=1)
    beta: float | None = Field(None, ge=0.5, le=1)
    bin_width_s: int | None = Field(None, gt=0)


DEFAULT_VARIANT = VariantSpec(name="default")


class ExperimentPlan(BaseModel):
    """Machine-readable description of one observability experiment."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    version: Literal[1]
    id: str = Field(min_length=1)
    description: str = ""
    topology: Topology | str
    workload: WorkloadSpec
    phases: PhaseSchedule
    treatments: list[TreatmentSpec] = Field(default_factory=list)
    response_variables: list[ResponseVariableSpec] = Field(default_factory=list)
    variants: list[VariantSpec] = Field(default_factory=list)
    baseline: str | None = None
    repetitions: int = Field(1, ge=1)
    base_seed: int = Field(0, ge=0, lt=MAX_SEED)
    analysis: AnalysisSpec = Field(default_factory=AnalysisSpec)

    @model_validator(mode="after")
    def _unique_variants(self) -> "ExperimentPlan":
        seen: set[str] = set()
        for variant in self.variants:
            if variant.name in seen:
                raise ValueError(f"duplicate variant '{variant.name}'")
            seen.add(variant.name)
        return self

    @property
    def duration_s(self) -> int:
        return self.phases.total

    @property
    def effective_variants(self) -> list[VariantSpec]:
        """Declared variants, or a single override-free ``default`` variant."""
        return list(self.variants) or [DEFAULT_VARIANT]

    @property
    def baseline_variant(self) -> str:
        return self.baseline or self.effective_variants[0].name

    def variant(self, name: str) -> VariantSpec:
        for variant in self.effective_variants:
            if variant.name == name:
                return variant
        raise KeyError(f"unknown variant '{name}'")

    def fault_treatments(self) -> list[TreatmentSpec]:
        return [t for t in self.treatments if t.kind is TreatmentKind.FAULT]

    def window_of(self, treatment: TreatmentSpec) -> tuple[int, int] | None:
        """Activation window of a fault (its own, else the plan's fault window)."""
        if treatment.kind is not TreatmentKind.FAULT:
            return treatment.window
        return treatment.window or self.phases.fault_window_or_default
