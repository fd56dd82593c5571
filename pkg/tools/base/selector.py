"""Base registry with lazy, dotted-path loading of built-in entries."""

import importlib
from typing import Any, Generic, Iterator, TypeVar

from tools.logger.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


def load_object(full_path: str) -> Any:
    """Import ``package.module.NAME`` and return ``NAME``.

    Args:
        full_path: Dotted path to a module attribute

    Returns:
        The attribute

    Raises:
        ValueError: If the module or attribute cannot be loaded

    Example:
        >>> load_object("src.treatments.faults.NETWORK_DELAY").name
        'network-delay'
    """
    module_path, attr_name = full_path.rsplit(".", 1)
    try:
        module = importlib.import_module(module_path)
    except ImportError as e:
        raise ValueError(f"Cannot import module '{module_path}': {e}") from e

    if not hasattr(module, attr_name):
        raise ValueError(f"'{attr_name}' not found in module '{module_path}'")

    return getattr(module, attr_name)


class BaseRegistry(Generic[T]):
    """Name-keyed registry whose built-ins are declared as dotted paths.

    Subclasses define ``_BUILTINS`` mapping entry names to dotted paths. A new
    instance loads and registers every built-in through the same
    :meth:`register` call that extensions use, so built-ins get no special path.

    Example:
        >>> class TreatmentRegistry(BaseRegistry):
        ...     _BUILTINS = {
        ...         "network-delay": "src.treatments.faults.NETWORK_DELAY",
        ...     }
        >>> registry = TreatmentRegistry()
        >>> registry.get("network-delay")
    """

    _BUILTINS: dict[str, str] = {}  # Override in subclass

    def __init__(self, load_builtins: bool = True):
        self._entries: dict[str, T] = {}
        if load_builtins:
            for name, full_path in self._BUILTINS.items():
                entry = load_object(full_path)
                self.register(entry)
                logger.debug(f"{type(self).__name__}: loaded built-in '{name}' from {full_path}")

    def _key(self, entry: T) -> str:
        """Return the registry name of an entry."""
        return getattr(entry, "name")

    def _duplicate_error(self, name: str) -> Exception:
        return ValueError(f"'{name}' is already registered in {type(self).__name__}")

    def _unknown_error(self, name: str) -> Exception:
        available = ", ".join(self.names())
        return ValueError(
            f"Unknown entry '{name}' for {type(self).__name__}. Available: {available}"
        )

    def register(self, entry: T) -> T:
        """Register an entry under its name.

        Raises:
            Exception: subclass-specific duplicate error if the name is taken
        """
        name = self._key(entry)
        if name in self._entries:
            raise self._duplicate_error(name)
        self._entries[name] = entry
        return entry

    def get(self, name: str) -> T:
        """Look up a registered entry by name."""
        try:
            return self._entries[name]
        except KeyError:
            raise self._unknown_error(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[T]:
        return iter(self._entries.values())

    def names(self) -> list[str]:
        """List registered names in registration order."""
        return list(self._entries.keys())
