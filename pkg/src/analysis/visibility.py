"""Fault visibility: a threshold classifier gated by a rank-sum test.

The classifier predicts "fault" for values on the fault side of a threshold.
The threshold maximizes Youden's J (TPR - FPR) on the labeled data and the
score is the balanced accuracy ``(1 + J) / 2`` at that threshold. A variable
counts as detected when the rank-sum test is significant at ``alpha`` and the
balanced accuracy reaches ``beta``.
"""

from dataclasses import dataclass
from typing import Any, Literal

import numpy as np

from .response import Label, LabeledObservation
from .stats import mann_whitney

NO_DATA_VERDICT = "undetectable — no data"

Direction = Literal["increase", "decrease"]


@dataclass(frozen=True)
class VisibilityScore:
    balanced_accuracy: float
    effect_size: float
    p_value: float
    n_fault: int
    n_normal: int
    detected: bool
    threshold: float

    @property
    def verdict(self) -> str:
        return "detected" if self.detected else "not detected"

    def to_dict(self) -> dict[str, Any]:
        return {
            "balanced_accuracy": round(self.balanced_accuracy, 10),
            "effect_size": round(self.effect_size, 10),
            "p_value": float(f"{self.p_value:.10g}"),
            "n_fault": self.n_fault,
            "n_normal": self.n_normal,
            "detected": self.detected,
            "threshold": self.threshold if np.isfinite(self.threshold) else None,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class Undetectable:
    """Not enough data to score: one of the labels has no observations."""

    n_fault: int
    n_normal: int

    detected: bool = False
    balanced_accuracy: None = None
    verdict: str = NO_DATA_VERDICT

    def to_dict(self) -> dict[str, Any]:
        return {
            "balanced_accuracy": None,
            "effect_size": None,
            "p_value": None,
            "n_fault": self.n_fault,
            "n_normal": self.n_normal,
            "detected": False,
            "threshold": None,
            "verdict": self.verdict,
        }


def youden_threshold(fault: np.ndarray, normal: np.ndarray) -> tuple[float, float]:
    """Threshold ``c`` maximizing TPR - FPR for the rule ``value >= c``; returns (c, J).

    Ties in J go to the smallest threshold.
    """
    candidates = np.unique(np.concatenate([fault, normal]))
    fault_sorted = np.sort(fault)
    normal_sorted = np.sort(normal)
    tpr = 1 - np.searchsorted(fault_sorted, candidates, side="left") / len(fault)
    fpr = 1 - np.searchsorted(normal_sorted, candidates, side="left") / len(normal)
    j = tpr - fpr
    best = int(np.argmax(j))
    if j[best] <= 0:
        # no threshold beats "never fault"
        return float(np.inf), 0.0
    return float(candidates[best]), float(j[best])


def visibility_score(
    labeled: list[LabeledObservation],
    alpha: float = 0.01,
    beta: float = 0.6,
    direction: Direction = "increase",
) -> VisibilityScore | Undetectable:
    """Score how distinguishable fault-window observations are from normal ones.

    Args:
        labeled: Observations labeled by fault-window membership
        alpha: Significance level of the rank-sum gate
        beta: Minimum balanced accuracy
        direction: Side the fault is expected to move the values

    Returns:
        A score, or :class:`Undetectable` when either label has no data
    """
    fault = np.array([obs.value for obs in labeled if obs.label is Label.FAULT], dtype=float)
    normal = np.array([obs.value for obs in labeled if obs.label is Label.NORMAL], dtype=float)
    if len(fault) == 0 or len(normal) == 0:
        return Undetectable(n_fault=len(fault), n_normal=len(normal))

    sign = 1.0 if direction == "increase" else -1.0
    threshold, j = youden_threshold(sign * fault, sign * normal)
    balanced_accuracy = (1 + j) / 2

    # effect = P(normal < fault) for an increase, P(fault < normal) for a decrease
    if direction == "increase":
        test = mann_whitney(normal, fault, alternative="less")
    else:
        test = mann_whitney(fault, normal, alternative="less")

    detected = test.p_value < alpha and balanced_accuracy >= beta
    return VisibilityScore(
        balanced_accuracy=balanced_accuracy,
        effect_size=test.effect_size,
        p_value=test.p_value,
        n_fault=len(fault),
        n_normal=len(normal),
        detected=detected,
        threshold=sign * threshold,
    )
