"""Closed-loop workload: load profiles and per-user activity windows."""

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .topology import ConstantDist, Distribution

Interval = tuple[int, int]


class ConstantProfile(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["constant"] = "constant"
    users: int = Field(ge=0)

    @property
    def max_users(self) -> int:
        return self.users


class RampProfile(BaseModel):
    """Active user count interpolated linearly over the ramp-up phase."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["ramp"] = "ramp"
    from_users: int = Field(ge=0)
    to_users: int = Field(ge=0)

    @property
    def max_users(self) -> int:
        return max(self.from_users, self.to_users)


class SpikeProfile(BaseModel):
    """``base`` users, ``peak`` users inside ``window`` (seconds, half-open)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["spike"] = "spike"
    base: int = Field(ge=0)
    peak: int = Field(ge=0)
    window: tuple[int, int]

    @model_validator(mode="after")
    def _window_ordered(self) -> "SpikeProfile":
        start, end = self.window
        if start < 0 or end <= start:
            raise ValueError(f"spike window {list(self.window)} must satisfy 0 <= start < end")
        return self

    @property
    def max_users(self) -> int:
        return max(self.base, self.peak)


LoadProfile = Annotated[
    Union[ConstantProfile, RampProfile, SpikeProfile], Field(discriminator="kind")
]


class WorkloadSpec(BaseModel):
    """Virtual users issuing requests to the entry service in a closed loop.

    Attributes:
        profile: Active-user shape over time
        think_time: Pause between a response and the next request (ms)
        failure_backoff_ms: Minimum cycle after a failed request, so zero-think
            loops against a killed entry service stay finite
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    profile: LoadProfile
    think_time: Distribution = ConstantDist(value=0)
    failure_backoff_ms: float = Field(100.0, ge=0)


def active_intervals(profile: LoadProfile, user: int, ramp_up_us: int, end_us: int) -> list[Interval]:
    """Half-open windows ``[start, end)`` in which virtual user ``user`` may start requests.

    ``end_us`` is the exclusive upper bound of the run (duration + 1 µs, so a
    request may still start exactly at the duration boundary).
    """
    if isinstance(profile, ConstantProfile):
        return [(0, end_us)] if user < profile.users else []

    if isinstance(profile, RampProfile):
        a, b = profile.from_users, profile.to_users
        if user < min(a, b):
            return [(0, end_us)]
        if a <= b:
            if user >= b:
                return []
            if ramp_up_us == 0:
                return [(0, end_us)]
            # users(t) = floor(a + (b - a) * t / R) > user
            start = -(-ramp_up_us * (user + 1 - a) // (b - a))
            return [(start, end_us)] if start < end_us else []
        if user >= a:
            return []
        if ramp_up_us == 0:
            return []
        last = ramp_up_us * (a - user - 1) // (a - b)
        return [(0, min(last + 1, end_us))]

    # spike
    start_us, stop_us = profile.window[0] * 1_000_000, profile.window[1] * 1_000_000
    if user < min(profile.base, profile.peak):
        return [(0, end_us)]
    if profile.base <= user < profile.peak:
        return [(min(start_us, end_us), min(stop_us, end_us))]
    if profile.peak <= user < profile.base:
        return [(0, min(start_us, end_us)), (min(stop_us, end_us), end_us)]
    return []


def next_start(intervals: list[Interval], t_us: int) -> int | None:
    """Earliest time >= ``t_us`` inside one of ``intervals``; None once they are exhausted."""
    for start, end in intervals:
        if t_us < end and start < end:
            return max(t_us, start)
    return None
