import pytest

from src.analysis.overhead import overhead


@pytest.mark.parametrize(
    "baseline, variant, rendered",
    [
        (191.83, 197.68, "+3.05%"),
        (191.83, 202.05, "+5.33%"),
        (191.83, 191.83, "+0.00%"),
        (200.0, 190.0, "-5.00%"),
    ],
)
def test_rendering(baseline, variant, rendered):
    assert overhead(baseline, variant).rendered == rendered


def test_percent_is_rounded():
    assert overhead(191.83, 197.68).overhead_percent == 3.05


def test_baseline_must_be_positive():
    with pytest.raises(ValueError):
        overhead(0, 1.0)
