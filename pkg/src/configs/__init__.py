"""Engine configuration.

Usage:
    ```python
    from src.configs import Settings

    settings = Settings()
    settings.validate()

    alpha = settings.analysis.alpha
    jobs = settings.get("run.jobs", 1)
    ```
"""

from .settings import Settings

__all__ = ["Settings"]
