"""Response variables: extracting, windowing and labeling observations."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.plan.models import ResponseVariableSpec
from src.sue.result import RunResult


class UnknownSeriesError(KeyError):
    """The run has no metric series of that name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class Label(str, Enum):
    FAULT = "fault"
    NORMAL = "normal"


@dataclass(frozen=True)
class Observation:
    t: float
    value: float


@dataclass(frozen=True)
class LabeledObservation:
    t: float
    value: float
    label: Label


def trace_durations(run: RunResult, service: str) -> list[Observation]:
    """(start s, duration ms) of every exported span of ``service``; roots only for the entry."""
    observations = []
    for trace in run.traces:
        if trace.root.service == service:
            observations.append(Observation(trace.start_us / 1e6, trace.root_duration_us / 1000))
            continue
        for span in trace.spans:
            if span.service == service:
                observations.append(Observation(span.start_us / 1e6, span.duration_us / 1000))
    return observations


def metric_observations(run: RunResult, series: str) -> list[Observation]:
    """Raw samples of a metric series.

    Raises:
        UnknownSeriesError: the run does not emit ``series``
    """
    if series not in run.metric_series:
        raise UnknownSeriesError(f"unknown series '{series}'")
    return [Observation(sample.t, sample.value) for sample in run.metric_series[series]]


def aggregate_series(observations: list[Observation], window_s: int) -> list[Observation]:
    """Per-window means stamped with the window start; empty windows are dropped."""
    if window_s <= 0 or not observations:
        return list(observations)
    buckets: dict[int, list[float]] = {}
    for obs in observations:
        buckets.setdefault(int(obs.t // window_s), []).append(obs.value)
    return [
        Observation(float(index * window_s), float(np.mean(values)))
        for index, values in sorted(buckets.items())
    ]


def extract_response(run: RunResult, spec: ResponseVariableSpec, entry: str) -> list[Observation]:
    """Observations of one response variable in a run, in time order.

    Args:
        run: Finished run
        spec: Response variable
        entry: Entry service, used when a trace_duration variable names none

    Raises:
        UnknownSeriesError: metric source names a series the run lacks
    """
    if spec.source == "trace_duration":
        observations = trace_durations(run, spec.service or entry)
    else:
        observations = metric_observations(run, str(spec.series))
    observations.sort(key=lambda obs: obs.t)
    return aggregate_series(observations, spec.aggregation_window_s)


def label_observations(
    series: list[Observation], fault_window: tuple[float, float]
) -> list[LabeledObservation]:
    """Label each observation ``fault`` iff ``start <= t < end``."""
    start, end = fault_window
    return [
        LabeledObservation(obs.t, obs.value, Label.FAULT if start <= obs.t < end else Label.NORMAL)
        for obs in series
    ]


def label_counts(labeled: list[LabeledObservation]) -> dict[str, int]:
    n_fault = sum(1 for obs in labeled if obs.label is Label.FAULT)
    return {"fault": n_fault, "normal": len(labeled) - n_fault}
