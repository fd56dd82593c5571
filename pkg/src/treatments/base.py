"""Treatment extension interface.

A treatment type is described by a :class:`TreatmentDescriptor`: its parameter
schema, allowed targets, and either a perturbation callback (faults) or a
configuration callback (instrumentation). Built-ins and extensions use the
same descriptor and the same registration path.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping

import numpy as np
from pydantic import BaseModel, ValidationError

from .spec import TargetKind, TargetRef, TreatmentKind


@dataclass(frozen=True)
class CallContext:
    """Where and when a fault is being applied.

    Attributes:
        time_us: Virtual time the call is issued
        caller: Calling service (None for the request entering the entry service)
        callee: Called service
        window_start_us: Start of the fault's activation window
        window_end_us: End (exclusive) of the fault's activation window
    """

    time_us: int
    caller: str | None
    callee: str
    window_start_us: int
    window_end_us: int


@dataclass(frozen=True)
class CallPerturbation:
    """Effect of one fault on one call. The neutral value changes nothing."""

    delay_us: int = 0
    failed: bool = False
    defer_until_us: int | None = None
    latency_factor: float = 1.0


NO_PERTURBATION = CallPerturbation()


@dataclass(frozen=True)
class AlertRule:
    """Threshold alert: fires after ``consecutive_breaches`` scrapes strictly above ``threshold``."""

    metric: str
    threshold: float
    consecutive_breaches: int


@dataclass(frozen=True)
class InstrumentationConfig:
    """Whole-run observability configuration produced by instrumentation treatments."""

    sampling_rate: float = 1.0
    scrape_interval_s: float = 15.0
    alerts: tuple[AlertRule, ...] = ()
    disabled_services: frozenset[str] = frozenset()

    def with_alert(self, rule: AlertRule) -> "InstrumentationConfig":
        alerts = tuple(sorted((*self.alerts, rule), key=lambda a: a.metric))
        return replace(self, alerts=alerts)


PerturbFn = Callable[[Any, CallContext, np.random.Generator], CallPerturbation]
ConfigureFn = Callable[[InstrumentationConfig, Any, TargetRef], InstrumentationConfig]


@dataclass(frozen=True)
class TreatmentDescriptor:
    """Registration record of a treatment type.

    Attributes:
        name: Identifier used in plans (``name:`` of a treatment)
        kind: fault or instrumentation
        params_model: pydantic model validating ``params``
        targets: Target kinds the treatment accepts
        perturb: Fault callback ``(params, ctx, rng) -> CallPerturbation``;
            must be pure given its arguments
        configure: Instrumentation callback ``(config, params, target) -> config``
        overrides: Variant override keys mapped to parameter names
        qualifier: How a variant key ``key.<q>`` selects a treatment:
            ``"target"`` (q is the target) or a parameter name (q is its value)
        description: One-line summary for docs
    """

    name: str
    kind: TreatmentKind
    params_model: type[BaseModel]
    targets: frozenset[TargetKind]
    perturb: PerturbFn | None = None
    configure: ConfigureFn | None = None
    overrides: Mapping[str, str] = field(default_factory=dict)
    qualifier: str | None = None
    description: str = ""

    def __post_init__(self) -> None:
        if self.kind is TreatmentKind.FAULT and self.perturb is None:
            raise ValueError(f"fault treatment '{self.name}' needs a perturb callback")
        if self.kind is TreatmentKind.INSTRUMENTATION and self.configure is None:
            raise ValueError(f"instrumentation treatment '{self.name}' needs a configure callback")
        unknown = set(self.overrides.values()) - set(self.params_model.model_fields)
        if unknown:
            raise ValueError(f"'{self.name}' overrides unknown parameters: {sorted(unknown)}")

    def validate_params(self, params: Mapping[str, Any]) -> BaseModel:
        """Validate raw parameters.

        Raises:
            pydantic.ValidationError: parameters do not satisfy the schema
        """
        return self.params_model.model_validate(dict(params))

    def params_errors(self, params: Mapping[str, Any]) -> list[str]:
        """Schema problems of ``params`` as messages (empty = valid)."""
        try:
            self.validate_params(params)
        except ValidationError as e:
            return [
                f"{'.'.join(str(p) for p in err['loc']) or 'params'}: {err['msg']}"
                for err in e.errors()
            ]
        return []

    def identity(self, params: Mapping[str, Any], target: str) -> str | None:
        """Value that distinguishes two treatments of this type (None = one per plan)."""
        if self.qualifier is None:
            return None
        if self.qualifier == "target":
            return target
        value = params.get(self.qualifier)
        return None if value is None else str(value)


class DuplicateTreatmentError(ValueError):
    """A treatment type with this name is already registered."""


class UnknownTreatmentError(KeyError):
    """No treatment type is registered under this name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class TreatmentConflictError(ValueError):
    """Two instrumentation treatments of the same type and target disagree."""
