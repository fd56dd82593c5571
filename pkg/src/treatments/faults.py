"""Built-in fault treatments.

Each fault is a :class:`TreatmentDescriptor` registered through the same
interface extensions use. Perturbation callbacks only see their validated
parameters, the call-site context and the run's generator.
"""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .base import CallContext, CallPerturbation, NO_PERTURBATION, TreatmentDescriptor
from .spec import TargetKind, TreatmentKind


class NetworkDelayParams(BaseModel):
    """Extra latency on a caller->callee edge.

    ``uniform`` draws a fresh delay in ``[min_ms, max_ms]`` per call;
    ``constant`` always adds ``max_ms`` and draws nothing.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    min_ms: float = Field(ge=0)
    max_ms: float = Field(ge=0)
    distribution: Literal["uniform", "constant"] = "uniform"

    @model_validator(mode="after")
    def _ordered(self) -> "NetworkDelayParams":
        if self.min_ms > self.max_ms:
            raise ValueError(f"min_ms ({self.min_ms}) must not exceed max_ms ({self.max_ms})")
        return self


def _network_delay(params: NetworkDelayParams, ctx: CallContext, rng: np.random.Generator) -> CallPerturbation:
    if params.distribution == "constant":
        delay_ms = params.max_ms
    else:
        delay_ms = rng.uniform(params.min_ms, params.max_ms)
    return CallPerturbation(delay_us=round(delay_ms * 1000))


class PacketLossParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    probability: float = Field(ge=0, le=1)


def _packet_loss(params: PacketLossParams, ctx: CallContext, rng: np.random.Generator) -> CallPerturbation:
    # one draw per call whatever the probability, so the stream does not depend on it
    if rng.random() < params.probability:
        return CallPerturbation(failed=True)
    return NO_PERTURBATION


class NoParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


def _service_pause(params: NoParams, ctx: CallContext, rng: np.random.Generator) -> CallPerturbation:
    return CallPerturbation(defer_until_us=ctx.window_end_us)


def _service_kill(params: NoParams, ctx: CallContext, rng: np.random.Generator) -> CallPerturbation:
    return CallPerturbation(failed=True)


NETWORK_DELAY = TreatmentDescriptor(
    name="network-delay",
    kind=TreatmentKind.FAULT,
    params_model=NetworkDelayParams,
    targets=frozenset({TargetKind.EDGE}),
    perturb=_network_delay,
    description="Adds latency to every call on an edge while active.",
)

PACKET_LOSS = TreatmentDescriptor(
    name="packet-loss",
    kind=TreatmentKind.FAULT,
    params_model=PacketLossParams,
    targets=frozenset({TargetKind.EDGE}),
    perturb=_packet_loss,
    description="Fails calls on an edge with a fixed probability.",
)

SERVICE_PAUSE = TreatmentDescriptor(
    name="service-pause",
    kind=TreatmentKind.FAULT,
    params_model=NoParams,
    targets=frozenset({TargetKind.SERVICE}),
    perturb=_service_pause,
    description="Queues requests to a service until the fault window ends.",
)

SERVICE_KILL = TreatmentDescriptor(
    name="service-kill",
    kind=TreatmentKind.FAULT,
    params_model=NoParams,
    targets=frozenset({TargetKind.SERVICE}),
    perturb=_service_kill,
    description="Fails every request to a service immediately.",
)
