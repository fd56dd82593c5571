import pytest

from src.assurance.budget import SloPolicy, error_budget
from src.assurance.recommend import VariantAssessment, dominates, recommend


def variant(name, visibility, overhead, latency=None, detected=True):
    return VariantAssessment(name, visibility, detected, latency, overhead)


def budget_at(fraction):
    total = 129.6
    return error_budget(
        SloPolicy(availability_target=0.999, period_days=90, consumed_minutes=round(total * (1 - fraction), 1))
    )


A = variant("A", 0.91, 3.05, latency=45)
B = variant("B", 0.97, 5.33, latency=30)


def names(recommendation):
    return [row.name for row in recommendation.ranking]


def test_ample_budget_prefers_low_overhead():
    recommendation = recommend([A, B], budget_at(0.9))

    assert names(recommendation) == ["A", "B"]
    assert recommendation.best == "A"
    assert not recommendation.budget_pressure
    assert recommendation.ranking[0].verdict == "recommended"


def test_budget_pressure_prefers_fast_detection():
    recommendation = recommend([A, B], budget_at(0.1))

    assert names(recommendation) == ["B", "A"]
    assert recommendation.budget_pressure
    assert "below 25%" in recommendation.rationale


def test_missing_ledger_means_a_full_budget():
    recommendation = recommend([A, B], None)

    assert recommendation.best == "A"
    assert recommendation.budget == {"source": "none"}


def test_single_variant():
    assert names(recommend([A], None)) == ["A"]


def test_no_variants():
    with pytest.raises(ValueError):
        recommend([], None)


def test_dominated_variant_never_outranks_its_dominator():
    worse = variant("C", 0.80, 6.0, latency=5)

    for budget in (budget_at(0.9), budget_at(0.05)):
        ranking = names(recommend([worse, A, B], budget))
        assert ranking.index("C") > ranking.index("A")
        assert ranking.index("C") > ranking.index("B")


def test_dominated_verdict_and_rationale():
    worse = variant("C", 0.80, 6.0)

    recommendation = recommend([A, worse], None)

    assert recommendation.ranking[1].verdict == "dominated"
    assert "Dominated on visibility and overhead: C." in recommendation.rationale


def test_undetected_variants_follow_detecting_ones():
    blind = variant("Z", 0.55, 0.0, detected=False)

    assert names(recommend([blind, B], None)) == ["B", "Z"]


def test_ranking_is_invariant_to_overhead_scale():
    scaled = [variant(v.name, v.visibility, v.overhead_percent * 10, v.detection_latency_s) for v in (A, B)]

    for budget in (budget_at(0.9), budget_at(0.1)):
        assert names(recommend(scaled, budget)) == names(recommend([A, B], budget))


def test_dominates():
    assert dominates(A, variant("C", 0.80, 6.0))
    assert not dominates(A, B)
    assert not dominates(A, A)
