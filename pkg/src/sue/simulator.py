"""Deterministic discrete-event simulation of closed-loop virtual users."""

import heapq

import numpy as np

from src.plan.models import ExperimentPlan, VariantSpec
from src.telemetry.ledger import settle_costs
from src.telemetry.recorder import TraceRecorder
from src.telemetry.sampling import sampler_seed_for
from src.treatments.base import TreatmentConflictError, UnknownTreatmentError
from src.treatments.registry import TreatmentRegistry
from src.treatments.schedule import TreatmentSchedule, compile_treatments
from src.treatments.spec import TargetKind
from tools.logger import get_logger

from .calltree import CallTreeBuilder
from .result import RunResult
from .topology import Topology
from .workload import active_intervals, next_start

logger = get_logger(__name__)

US_PER_S = 1_000_000


class SimulationError(RuntimeError):
    """The run cannot be executed (nonpositive duration, unresolved target)."""


def _check_targets(schedule: TreatmentSchedule, topology: Topology) -> None:
    for fault in schedule.faults:
        target = fault.target
        if target.kind is TargetKind.SERVICE and topology.service(str(target.service)) is None:
            raise SimulationError(f"fault '{fault.descriptor.name}' targets unknown service '{target.service}'")
        if target.kind is TargetKind.EDGE and not topology.has_edge(str(target.caller), str(target.callee)):
            raise SimulationError(f"fault '{fault.descriptor.name}' targets unknown edge '{target}'")


def simulate_run(
    plan: ExperimentPlan,
    topology: Topology,
    variant: VariantSpec,
    seed: int,
    registry: TreatmentRegistry | None = None,
    repetition: int = 0,
) -> RunResult:
    """Run one seeded simulation of the plan under a variant.

    Every virtual user loops: issue a request to the entry service, wait for
    the whole call tree, think, repeat. Users start requests while
    ``t <= duration``; requests in flight at the boundary run to completion.
    Events are ordered by (time, insertion sequence) and all randomness comes
    from one generator seeded with ``seed``.

    Args:
        plan: Validated plan
        topology: Topology the plan was validated against
        variant: Variant whose instrumentation overrides apply
        seed: Run seed (unsigned 64-bit)
        registry: Treatment registry (defaults to the process-wide one)
        repetition: Repetition index, recorded in the result

    Returns:
        The run's telemetry

    Raises:
        SimulationError: nonpositive duration or a target missing from the topology
    """
    duration_s = plan.duration_s
    if duration_s <= 0:
        raise SimulationError(f"run duration must be positive, got {duration_s}s")
    duration_us = duration_s * US_PER_S

    try:
        schedule = compile_treatments(plan, variant, registry)
    except (UnknownTreatmentError, TreatmentConflictError) as e:
        raise SimulationError(str(e)) from e
    _check_targets(schedule, topology)

    rng = np.random.Generator(np.random.PCG64(seed))
    builder = CallTreeBuilder(topology, schedule, rng)
    recorder = TraceRecorder(topology, schedule.instrumentation, duration_us, sampler_seed_for(seed))

    workload = plan.workload
    backoff_us = round(workload.failure_backoff_ms * 1000)
    end_us = duration_us + 1
    intervals = [
        active_intervals(workload.profile, user, plan.phases.ramp_up * US_PER_S, end_us)
        for user in range(workload.profile.max_users)
    ]

    queue: list[tuple[int, int, int]] = []
    sequence = 0
    for user, windows in enumerate(intervals):
        start = next_start(windows, 0)
        if start is not None:
            heapq.heappush(queue, (start, sequence, user))
            sequence += 1

    trace_id = 0
    span_count = 0
    while queue:
        t_us, _, user = heapq.heappop(queue)
        trace_id += 1
        root = builder.build(t_us)
        span_count += sum(1 for _ in root.walk())
        recorder.record(trace_id, root)

        cycle = root.duration_us + workload.think_time.draw_us(rng)
        if root.error and cycle < backoff_us:
            cycle = backoff_us
        following = next_start(intervals[user], t_us + max(cycle, 1))
        if following is not None:
            heapq.heappush(queue, (following, sequence, user))
            sequence += 1

    metric_series = recorder.finish()
    ledger = settle_costs(recorder.usage)
    context = {"variant": variant.name, "seed": seed, "repetition": repetition}
    logger.info(
        f"Simulated {trace_id} requests, exported {len(recorder.traces)} traces, cpu {ledger.rendered_total}",
        extra={"context": context},
    )

    return RunResult(
        variant=variant.name,
        seed=seed,
        repetition=repetition,
        duration_s=duration_s,
        traces=recorder.traces,
        metric_series=metric_series,
        cost_ledger=ledger,
        event_log=[event.to_dict() for event in schedule.events],
        usage=recorder.usage,
        config=schedule.instrumentation,
        requests=recorder.requests,
        failed_requests=recorder.failed_requests,
        span_count=span_count,
    )
