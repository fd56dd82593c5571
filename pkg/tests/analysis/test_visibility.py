import numpy as np
import pytest

from src.analysis.response import Label, LabeledObservation
from src.analysis.visibility import NO_DATA_VERDICT, Undetectable, visibility_score, youden_threshold


def labeled(fault, normal):
    return [LabeledObservation(0.0, v, Label.FAULT) for v in fault] + [
        LabeledObservation(0.0, v, Label.NORMAL) for v in normal
    ]


def test_perfect_separation():
    score = visibility_score(labeled([100 + i for i in range(20)], [float(i) for i in range(40)]))

    assert score.balanced_accuracy == 1.0
    assert score.threshold == 100
    assert score.effect_size == 1.0
    assert score.p_value < 1e-6
    assert score.detected
    assert score.verdict == "detected"


def test_scores_are_invariant_under_monotone_transforms():
    rng = np.random.default_rng(3)
    fault = rng.lognormal(3.2, 0.4, size=60)
    normal = rng.lognormal(3.0, 0.4, size=150)

    raw = visibility_score(labeled(fault, normal))
    logged = visibility_score(labeled(np.log(fault), np.log(normal)))

    assert logged.balanced_accuracy == pytest.approx(raw.balanced_accuracy)
    assert logged.p_value == pytest.approx(raw.p_value)
    assert logged.detected == raw.detected


def test_missing_label_is_undetectable():
    score = visibility_score(labeled([], [1.0, 2.0]))

    assert isinstance(score, Undetectable)
    assert not score.detected
    assert score.verdict == NO_DATA_VERDICT
    assert score.to_dict()["balanced_accuracy"] is None


def test_decrease_direction():
    fault = [float(i) for i in range(10)]
    normal = [float(50 + i) for i in range(30)]

    down = visibility_score(labeled(fault, normal), direction="decrease")
    up = visibility_score(labeled(fault, normal), direction="increase")

    assert down.detected
    assert down.threshold == 9
    assert not up.detected
    assert up.balanced_accuracy == 0.5


def test_significant_but_weak_signal_is_not_detected():
    rng = np.random.default_rng(8)
    fault = rng.normal(0.3, 1.0, size=3000)
    normal = rng.normal(0.0, 1.0, size=3000)

    score = visibility_score(labeled(fault, normal), alpha=0.01, beta=0.6)

    assert score.p_value < 0.01
    assert score.balanced_accuracy < 0.6
    assert not score.detected


def test_youden_threshold_picks_the_smallest_best_cut():
    threshold, j = youden_threshold(np.array([5.0, 6.0]), np.array([1.0, 2.0]))

    assert (threshold, j) == (5.0, 1.0)


@pytest.mark.slow
def test_no_signal_is_rarely_detected():
    detected = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        score = visibility_score(labeled(rng.normal(size=50), rng.normal(size=100)))
        detected += score.detected

    assert detected <= 5
