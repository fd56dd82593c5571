"""Span and trace records."""

from dataclasses import dataclass, field
from typing import Any, Iterator


@dataclass(frozen=True)
class Span:
    """One service's share of a request, in virtual microseconds."""

    trace_id: int
    span_id: int
    parent: int | None
    service: str
    start_us: int
    duration_us: int
    error: bool = False

    @property
    def end_us(self) -> int:
        return self.start_us + self.duration_us

    def to_dict(self) -> dict[str, Any]:
        return {
            "span_id": self.span_id,
            "parent": self.parent,
            "service": self.service,
            "start_us": self.start_us,
            "duration_us": self.duration_us,
            "error": self.error,
        }


@dataclass(frozen=True)
class Trace:
    """All exported spans of one request. ``spans[0]`` is the root."""

    trace_id: int
    spans: tuple[Span, ...]

    def __post_init__(self) -> None:
        roots = [s for s in self.spans if s.parent is None]
        if len(roots) != 1 or self.spans[0] is not roots[0]:
            raise ValueError(f"trace {self.trace_id} must start with its single root span")

    @property
    def root(self) -> Span:
        return self.spans[0]

    @property
    def root_duration_us(self) -> int:
        return self.root.duration_us

    @property
    def start_us(self) -> int:
        return self.root.start_us

    @property
    def error(self) -> bool:
        return self.root.error

    def to_dict(self) -> dict[str, Any]:
        return {
            "trace_id": self.trace_id,
            "root_service": self.root.service,
            "start_us": self.start_us,
            "root_duration_us": self.root_duration_us,
            "error": self.error,
            "spans": [span.to_dict() for span in self.spans],
        }


@dataclass
class SpanNode:
    """Mutable span of an in-progress call tree, before sampling and export."""

    span_id: int
    service: str
    start_us: int
    duration_us: int = 0
    error: bool = False
    children: list["SpanNode"] = field(default_factory=list)

    @property
    def end_us(self) -> int:
        return self.start_us + self.duration_us

    def walk(self) -> Iterator["SpanNode"]:
        """Pre-order traversal."""
        yield self
        for child in self.children:
            yield from child.walk()
