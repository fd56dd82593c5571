"""Expanding one request into a timed span tree.

Random draws happen in a fixed depth-first order so a seed fully determines
the tree: on arrival at a service, its service-fault draws, then its own
latency, then for each outgoing call (in declaration order, ``count`` times)
the edge-fault draws followed by the callee's subtree.
"""

from itertools import count
from typing import Iterator

import numpy as np

from src.telemetry.spans import SpanNode
from src.treatments.base import CallContext, CallPerturbation
from src.treatments.schedule import CompiledFault, TreatmentSchedule, apply_fault, merge_perturbations

from .topology import Topology


def _perturb(
    faults: list[CompiledFault], caller: str | None, callee: str, t_us: int, rng: np.random.Generator
) -> CallPerturbation:
    return merge_perturbations(
        [apply_fault(f, CallContext(t_us, caller, callee, f.start_us, f.end_us), rng) for f in faults]
    )


class CallTreeBuilder:
    """Builds span trees for one run; owns the run-global span id counter.

    Args:
        topology: Acyclic topology with sequential calls
        schedule: Compiled treatments of the run
        rng: The run's generator
    """

    def __init__(self, topology: Topology, schedule: TreatmentSchedule, rng: np.random.Generator):
        self.topology = topology
        self.schedule = schedule
        self.rng = rng
        self._span_ids: Iterator[int] = count(1)

    def _call(self, caller: str | None, callee: str, t_us: int) -> tuple[SpanNode | None, int]:
        """Issue one call at ``t_us``; returns (callee span or None if it failed, time the caller resumes)."""
        edge = _perturb(self.schedule.call_faults(caller, callee, t_us), caller, callee, t_us, self.rng)
        if edge.failed:
            return None, t_us
        arrival = t_us + edge.delay_us

        service = _perturb(self.schedule.service_faults(callee, arrival), caller, callee, arrival, self.rng)
        if service.failed:
            return None, arrival

        node = SpanNode(next(self._span_ids), callee, arrival)
        spec = self.topology.service(callee)
        assert spec is not None
        work_start = arrival if service.defer_until_us is None else max(arrival, service.defer_until_us)
        own_us = spec.base_latency.draw_us(self.rng)
        factor = edge.latency_factor * service.latency_factor
        if factor != 1.0:
            own_us = round(own_us * factor)
        cursor = work_start + own_us

        for call in spec.calls:
            for _ in range(call.count):
                child, cursor = self._call(callee, call.callee, cursor)
                if child is None:
                    node.error = True
                else:
                    node.children.append(child)
                    node.error = node.error or child.error

        node.duration_us = cursor - arrival
        return node, cursor

    def build(self, start_us: int) -> SpanNode:
        """Span tree of one request entering the entry service at ``start_us``.

        A request rejected before reaching the entry service yields a
        zero-duration error root span.
        """
        root, _ = self._call(None, self.topology.entry, start_us)
        if root is None:
            root = SpanNode(next(self._span_ids), self.topology.entry, start_us, error=True)
        return root


def build_call_tree(
    service: str,
    topology: Topology,
    rng: np.random.Generator,
    active_faults: TreatmentSchedule,
    start_us: int = 0,
) -> SpanNode:
    """One-off call tree rooted at ``service``; span ids start at 1.

    The simulator keeps a single :class:`CallTreeBuilder` per run instead,
    so span ids stay unique across the run.
    """
    builder = CallTreeBuilder(topology.model_copy(update={"entry": service}), active_faults, rng)
    return builder.build(start_us)
