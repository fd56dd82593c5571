"""Simulated microservice topology: services, call graph, latency and CPU-cost parameters."""

from graphlib import CycleError, TopologicalSorter
from pathlib import Path
from typing import Annotated, Any, Literal, Union

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from src.common.errors import Violation
from src.common.yamlio import load_yaml_mapping, validate_model


def _ms_to_us(value_ms: float) -> int:
    return round(value_ms * 1000)


class ConstantDist(BaseModel):
    """Fixed value in milliseconds. Consumes no random draw."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["constant"] = "constant"
    value: float = Field(ge=0)

    def draw_us(self, rng: np.random.Generator) -> int:
        return _ms_to_us(self.value)

    @property
    def mean_ms(self) -> float:
        return self.value


class UniformDist(BaseModel):
    """Uniform on [lo, hi] milliseconds. One draw."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["uniform"] = "uniform"
    lo: float = Field(ge=0)
    hi: float = Field(ge=0)

    @model_validator(mode="after")
    def _ordered(self) -> "UniformDist":
        if self.lo > self.hi:
            raise ValueError(f"uniform lo ({self.lo}) must not exceed hi ({self.hi})")
        return self

    def draw_us(self, rng: np.random.Generator) -> int:
        return _ms_to_us(rng.uniform(self.lo, self.hi))

    @property
    def mean_ms(self) -> float:
        return (self.lo + self.hi) / 2


class LognormalDist(BaseModel):
    """exp(N(mu, sigma)) milliseconds. One draw."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["lognormal"] = "lognormal"
    mu: float
    sigma: float = Field(ge=0)

    def draw_us(self, rng: np.random.Generator) -> int:
        return _ms_to_us(rng.lognormal(self.mu, self.sigma))

    @property
    def mean_ms(self) -> float:
        return float(np.exp(self.mu + self.sigma**2 / 2))


def _number_is_constant(value: Any) -> Any:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return {"kind": "constant", "value": value}
    return value


Distribution = Annotated[
    Union[ConstantDist, UniformDist, LognormalDist],
    Field(discriminator="kind"),
    BeforeValidator(_number_is_constant),
]


class CostParams(BaseModel):
    """Linear CPU cost model of one service, in CPU-seconds."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    cpu_base_per_second: float = Field(0.0, ge=0)
    cpu_per_request: float = Field(0.0, ge=0)
    cpu_per_span_exported: float = Field(0.0, ge=0)
    cpu_per_metric_sample: float = Field(0.0, ge=0)


class CallSpec(BaseModel):
    """Outgoing call of a service: ``count`` synchronous calls per request."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    callee: str
    count: int = Field(1, ge=0)
    sequential: bool = True

    @model_validator(mode="before")
    @classmethod
    def _callee_shorthand(cls, value: Any) -> Any:
        if isinstance(value, str):
            return {"callee": value}
        return value


class ServiceSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(min_length=1)
    base_latency: Distribution
    calls: list[CallSpec] = Field(default_factory=list)
    cpu: CostParams = Field(default_factory=CostParams)


class Topology(BaseModel):
    """Call graph of the system under experimentation."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    services: list[ServiceSpec] = Field(min_length=1)
    entry: str

    def service(self, name: str) -> ServiceSpec | None:
        for spec in self.services:
            if spec.name == name:
                return spec
        return None

    @property
    def service_names(self) -> list[str]:
        return [spec.name for spec in self.services]

    def has_edge(self, caller: str, callee: str) -> bool:
        spec = self.service(caller)
        return spec is not None and any(call.callee == callee for call in spec.calls)

    def edges(self) -> list[tuple[str, str]]:
        return [(spec.name, call.callee) for spec in self.services for call in spec.calls]


def topology_violations(topology: Topology, path: str = "topology") -> list[Violation]:
    """Check the structural invariants: unique names, known entry and callees, acyclic, sequential."""
    violations: list[Violation] = []
    names = topology.service_names

    seen: set[str] = set()
    for i, name in enumerate(names):
        if name in seen:
            violations.append(
                Violation("DuplicateService", f"{path}.services[{i}].name", f"service '{name}' defined twice")
            )
        seen.add(name)

    if topology.entry not in seen:
        violations.append(
            Violation("UnknownEntry", f"{path}.entry", f"entry service '{topology.entry}' is not defined")
        )

    for i, spec in enumerate(topology.services):
        for j, call in enumerate(spec.calls):
            where = f"{path}.services[{i}].calls[{j}]"
            if call.callee not in seen:
                violations.append(
                    Violation("UnknownCallee", where, f"'{spec.name}' calls undefined service '{call.callee}'")
                )
            if not call.sequential:
                violations.append(
                    Violation("ParallelCallUnsupported", where, "only sequential calls are simulated")
                )

    graph = {spec.name: {call.callee for call in spec.calls if call.callee in seen} for spec in topology.services}
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as e:
        cycle = " -> ".join(e.args[1])
        violations.append(Violation("CyclicCallGraph", f"{path}.services", f"call graph has a cycle: {cycle}"))

    return violations


def parse_topology(text: str) -> Topology:
    """Parse a topology YAML document.

    Raises:
        PlanSyntaxError: malformed YAML
        PlanSchemaError: schema mismatch (unknown field, wrong type)
    """
    return validate_model(Topology, load_yaml_mapping(text))


def load_topology(path: str | Path) -> Topology:
    """Read and parse a topology file.

    Raises:
        FileNotFoundError: the file does not exist
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"topology file not found: {path}")
    return parse_topology(path.read_text(encoding="utf-8"))
