"""Range checks for engine settings that dynaconf cannot express on its own."""

from typing import Any


def _number(settings: Any, key: str, default: float) -> float:
    value = settings.get(key, default)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValueError(f"{key} ({value!r}) must be a number") from None


class ConfigValidator:
    """Validates the ``analysis``, ``run`` and ``assurance`` sections.

    Args:
        settings: Dynaconf instance (anything with ``get(key, default)``)
    """

    def __init__(self, settings: Any):
        self.settings = settings

    def validate_analysis(self) -> None:
        """alpha in (0, 1), beta in [0.5, 1], positive plot bin width.

        Raises:
            ValueError: on the first out-of-range key
        """
        alpha = _number(self.settings, "analysis.alpha", 0.01)
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"analysis.alpha ({alpha}) must lie strictly between 0 and 1")

        beta = _number(self.settings, "analysis.beta", 0.6)
        if not 0.5 <= beta <= 1.0:
            raise ValueError(f"analysis.beta ({beta}) must lie in [0.5, 1]")

        if _number(self.settings, "analysis.bin_width_s", 10) <= 0:
            raise ValueError(f"analysis.bin_width_s ({self.settings.get('analysis.bin_width_s')}) must be positive")

    def validate_run(self) -> None:
        jobs = self.settings.get("run.jobs", 1)
        if isinstance(jobs, bool) or not isinstance(jobs, int) or jobs < 1:
            raise ValueError(f"run.jobs ({jobs!r}) must be a positive integer")

    def validate_assurance(self) -> None:
        threshold = _number(self.settings, "assurance.budget_threshold", 0.25)
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"assurance.budget_threshold ({threshold}) must lie in [0, 1]")

    def validate_all(self) -> None:
        """Run every section check.

        Raises:
            ValueError: naming the offending key
        """
        self.validate_analysis()
        self.validate_run()
        self.validate_assurance()
