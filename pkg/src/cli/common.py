"""Helpers shared by the oxlab subcommands."""

import sys
from typing import Iterable

from src.analysis.assessment import AnalysisSettings
from src.assurance.recommend import DEFAULT_BUDGET_THRESHOLD
from src.common.errors import Violation
from src.configs import Settings
from src.configs.validator import ConfigValidator
from src.plan.models import ExperimentPlan

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

MAX_SEED = 2**64


def fail(message: str, code: int = EXIT_CONFIG) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def print_violations(violations: Iterable[Violation]) -> None:
    for violation in violations:
        print(str(violation), file=sys.stderr)


def resolve_seed(flag: int | None, settings: Settings, plan: ExperimentPlan) -> int:
    """``--seed`` wins over ``OXLAB_SEED``, which wins over the plan's ``base_seed``.

    Raises:
        ValueError: the seed is not an unsigned 64-bit integer
    """
    if flag is not None:
        seed = flag
    else:
        env_seed = settings.get("OXLAB_SEED")
        seed = int(env_seed) if env_seed not in (None, "") else plan.base_seed
    if not 0 <= seed < MAX_SEED:
        raise ValueError(f"seed {seed} is not an unsigned 64-bit integer")
    return seed


def _pick(*values):
    return next(value for value in values if value is not None)


def analysis_settings(
    settings: Settings,
    plan: ExperimentPlan | None = None,
    alpha: float | None = None,
    beta: float | None = None,
    bin_width_s: int | None = None,
) -> AnalysisSettings:
    """CLI flags, then the plan's ``analysis`` section, then engine config.

    Raises:
        ValueError: a flag is outside the range the engine config allows
    """
    section = plan.analysis if plan is not None else None
    chosen = {
        "analysis.alpha": _pick(alpha, getattr(section, "alpha", None), settings.get("analysis.alpha", 0.01)),
        "analysis.beta": _pick(beta, getattr(section, "beta", None), settings.get("analysis.beta", 0.6)),
        "analysis.bin_width_s": _pick(bin_width_s, getattr(section, "bin_width_s", None), settings.get("analysis.bin_width_s", 10)),
    }
    ConfigValidator(chosen).validate_analysis()
    return AnalysisSettings(
        alpha=float(chosen["analysis.alpha"]),
        beta=float(chosen["analysis.beta"]),
        bin_width_s=int(chosen["analysis.bin_width_s"]),
        budget_threshold=float(settings.get("assurance.budget_threshold", DEFAULT_BUDGET_THRESHOLD)),
    )
