"""Engine settings: ``configs/**/*.yaml`` merged with ``.env`` and the environment."""

from pathlib import Path
from typing import Any

from dynaconf import Dynaconf

from .validator import ConfigValidator

PROJECT_ROOT = Path(__file__).resolve().parents[2]


class Settings:
    """Dynaconf-backed engine configuration.

    Later YAML files (sorted by path) override earlier ones; environment
    variables override both. ``OXLAB_SEED`` and ``RUN__JOBS`` are read the
    same way as keys from ``engine.yaml``.

    Example:
        >>> settings = Settings()
        >>> settings.get("analysis.alpha")
        0.01
    """

    def __init__(self, configs_dir: Path | None = None):
        """
        Args:
            configs_dir: Directory searched for ``*.yaml`` (default: ``configs/``)
        """
        search_dir = configs_dir or PROJECT_ROOT / "configs"
        self._dynaconf = Dynaconf(
            settings_files=[str(path) for path in sorted(search_dir.glob("**/*.yaml"))],
            # no prefix: ANALYSIS__ALPHA, OXLAB_SEED
            envvar_prefix=False,
            environments=False,
            load_dotenv=True,
            dotenv_path=str(PROJECT_ROOT / ".env"),
            nested_separator="__",
            merge_enabled=True,
        )
        self._validator = ConfigValidator(self._dynaconf)

    def __getattr__(self, name: str) -> Any:
        # settings.analysis.alpha
        return getattr(self._dynaconf, name)

    def get(self, key: str, default: Any = None) -> Any:
        """Dotted-key lookup, e.g. ``settings.get("run.jobs", 1)``."""
        return self._dynaconf.get(key, default)

    def validate(self) -> None:
        """Check value ranges.

        Raises:
            ValueError: naming the first out-of-range key
        """
        self._validator.validate_all()
