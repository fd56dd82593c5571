"""Plan-level treatment declarations and target references."""

from dataclasses import dataclass
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TreatmentKind(str, Enum):
    FAULT = "fault"
    INSTRUMENTATION = "instrumentation"


class TargetKind(str, Enum):
    SERVICE = "service"
    EDGE = "edge"
    GLOBAL = "global"


_EDGE_SEPARATORS = ("->", "→")


@dataclass(frozen=True)
class TargetRef:
    """Parsed treatment target: a service, a caller→callee edge, or global."""

    kind: TargetKind
    service: str | None = None
    caller: str | None = None
    callee: str | None = None

    def __str__(self) -> str:
        if self.kind is TargetKind.GLOBAL:
            return "global"
        if self.kind is TargetKind.EDGE:
            return f"{self.caller}->{self.callee}"
        return str(self.service)


def parse_target(text: str) -> TargetRef:
    """Parse ``global``, ``<service>`` or ``<caller>-><callee>`` (``→`` also accepted)."""
    text = text.strip()
    if text == "global":
        return TargetRef(TargetKind.GLOBAL)
    for separator in _EDGE_SEPARATORS:
        if separator in text:
            caller, callee = (part.strip() for part in text.split(separator, 1))
            return TargetRef(TargetKind.EDGE, caller=caller, callee=callee)
    return TargetRef(TargetKind.SERVICE, service=text)


class TreatmentSpec(BaseModel):
    """A treatment as written in a plan.

    Attributes:
        name: Registered treatment type (e.g. ``network-delay``)
        kind: fault | instrumentation; must match the registered type
        params: Parameters, validated against the type's schema at plan time
        target: ``global``, a service name, or ``caller->callee``
        window: ``[start, end)`` seconds; faults only (defaults to the plan's
            fault window when omitted)
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    kind: TreatmentKind
    params: dict[str, Any] = Field(default_factory=dict)
    target: str = "global"
    window: tuple[int, int] | None = None

    @model_validator(mode="after")
    def _window_ordered(self) -> "TreatmentSpec":
        if self.window is not None and self.window[1] <= self.window[0]:
            raise ValueError(f"treatment window {list(self.window)} is empty")
        return self

    @property
    def target_ref(self) -> TargetRef:
        return parse_target(self.target)


