"""Executing every (variant, repetition) run of a plan."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from src.plan.models import ExperimentPlan, VariantSpec
from src.treatments.registry import TreatmentRegistry
from tools.logger import get_logger

from .result import RunResult
from .simulator import simulate_run
from .topology import Topology

logger = get_logger(__name__)


def split_seed(base_seed: int, variant_index: int, repetition: int) -> int:
    """Seed of run (variant v, repetition k).

    Derived with numpy's ``SeedSequence`` using ``base_seed`` as entropy and
    ``(v, k)`` as spawn key, so runs are independent streams and the mapping
    never depends on execution order.
    """
    sequence = np.random.SeedSequence(entropy=base_seed, spawn_key=(variant_index, repetition))
    return int(sequence.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class RunTask:
    """One unit of work, picklable for worker processes."""

    plan: ExperimentPlan
    topology: Topology
    variant: VariantSpec
    seed: int
    repetition: int
    registry: TreatmentRegistry | None = None


def _execute(task: RunTask) -> RunResult:
    return simulate_run(task.plan, task.topology, task.variant, task.seed, task.registry, task.repetition)


def plan_tasks(
    plan: ExperimentPlan,
    topology: Topology,
    base_seed: int | None = None,
    repetitions: int | None = None,
    registry: TreatmentRegistry | None = None,
) -> list[RunTask]:
    """Runs of a plan in (variant order, repetition order)."""
    base_seed = plan.base_seed if base_seed is None else base_seed
    repetitions = plan.repetitions if repetitions is None else repetitions
    return [
        RunTask(plan, topology, variant, split_seed(base_seed, v, k), k, registry)
        for v, variant in enumerate(plan.effective_variants)
        for k in range(repetitions)
    ]


def run_all(
    plan: ExperimentPlan,
    topology: Topology,
    jobs: int = 1,
    base_seed: int | None = None,
    repetitions: int | None = None,
    registry: TreatmentRegistry | None = None,
) -> list[RunResult]:
    """Execute ``|variants| x repetitions`` runs.

    Args:
        plan: Validated plan
        topology: Its topology
        jobs: Worker processes; 1 runs inline
        base_seed: Overrides ``plan.base_seed``
        repetitions: Overrides ``plan.repetitions``
        registry: Treatment registry, shipped to workers when given

    Returns:
        Results ordered by (variant, repetition) whatever the schedule
    """
    tasks = plan_tasks(plan, topology, base_seed, repetitions, registry)
    logger.info(f"Running plan '{plan.id}': {len(tasks)} runs with {jobs} job(s)")
    if jobs <= 1 or len(tasks) <= 1:
        return [_execute(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as executor:
        return list(executor.map(_execute, tasks))
