"""Built-in instrumentation treatments.

Instrumentation treatments are whole-run: they fold into one static
:class:`InstrumentationConfig` before the simulation starts.
"""

from dataclasses import replace

from pydantic import BaseModel, ConfigDict, Field

from .base import AlertRule, InstrumentationConfig, TreatmentDescriptor
from .spec import TargetKind, TargetRef, TreatmentKind


class TraceSamplingRateParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    rate: float = Field(ge=0, le=1)


def _trace_sampling_rate(
    config: InstrumentationConfig, params: TraceSamplingRateParams, target: TargetRef
) -> InstrumentationConfig:
    return replace(config, sampling_rate=params.rate)


MIN_SCRAPE_INTERVAL_S = 0.001


class MetricScrapeIntervalParams(BaseModel):
    """Seconds between scrapes, at least one millisecond."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    seconds: float = Field(ge=MIN_SCRAPE_INTERVAL_S)


def _metric_scrape_interval(
    config: InstrumentationConfig, params: MetricScrapeIntervalParams, target: TargetRef
) -> InstrumentationConfig:
    return replace(config, scrape_interval_s=params.seconds)


class AlertThresholdParams(BaseModel):
    """Alert on ``metric`` once it is above ``threshold`` for ``consecutive_breaches`` scrapes."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    metric: str = Field(min_length=1)
    threshold: float
    consecutive_breaches: int = Field(1, ge=1)


def _alert_threshold(
    config: InstrumentationConfig, params: AlertThresholdParams, target: TargetRef
) -> InstrumentationConfig:
    return config.with_alert(AlertRule(params.metric, params.threshold, params.consecutive_breaches))


class InstrumentationPointParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    enabled: bool = True


def _instrumentation_point(
    config: InstrumentationConfig, params: InstrumentationPointParams, target: TargetRef
) -> InstrumentationConfig:
    disabled = set(config.disabled_services)
    if params.enabled:
        disabled.discard(str(target.service))
    else:
        disabled.add(str(target.service))
    return replace(config, disabled_services=frozenset(disabled))


TRACE_SAMPLING_RATE = TreatmentDescriptor(
    name="trace-sampling-rate",
    kind=TreatmentKind.INSTRUMENTATION,
    params_model=TraceSamplingRateParams,
    targets=frozenset({TargetKind.GLOBAL}),
    configure=_trace_sampling_rate,
    overrides={"trace_sampling_rate": "rate"},
    description="Head-based trace sampling probability.",
)

METRIC_SCRAPE_INTERVAL = TreatmentDescriptor(
    name="metric-scrape-interval",
    kind=TreatmentKind.INSTRUMENTATION,
    params_model=MetricScrapeIntervalParams,
    targets=frozenset({TargetKind.GLOBAL}),
    configure=_metric_scrape_interval,
    overrides={"metric_scrape_interval": "seconds"},
    description="Seconds between metric scrapes.",
)

ALERT_THRESHOLD = TreatmentDescriptor(
    name="alert-threshold",
    kind=TreatmentKind.INSTRUMENTATION,
    params_model=AlertThresholdParams,
    targets=frozenset({TargetKind.GLOBAL}),
    configure=_alert_threshold,
    overrides={"alert_threshold": "threshold", "alert_consecutive_breaches": "consecutive_breaches"},
    qualifier="metric",
    description="Threshold alert on a metric series.",
)

INSTRUMENTATION_POINT = TreatmentDescriptor(
    name="instrumentation-point",
    kind=TreatmentKind.INSTRUMENTATION,
    params_model=InstrumentationPointParams,
    targets=frozenset({TargetKind.SERVICE}),
    configure=_instrumentation_point,
    overrides={"instrumentation_point": "enabled"},
    qualifier="target",
    description="Turns span emission of one service on or off.",
)
