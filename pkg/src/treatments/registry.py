"""Treatment type registry.

Built-ins are declared as dotted paths and registered through
:meth:`TreatmentRegistry.register` exactly like extensions.
"""

from tools.base import BaseRegistry
from tools.logger import get_logger

from .base import DuplicateTreatmentError, TreatmentDescriptor, UnknownTreatmentError

logger = get_logger(__name__)


class TreatmentRegistry(BaseRegistry[TreatmentDescriptor]):
    """Registry of treatment descriptors keyed by treatment name.

    Example:
        >>> registry = TreatmentRegistry()
        >>> registry.get("network-delay").kind
        <TreatmentKind.FAULT: 'fault'>
    """

    _BUILTINS = {
        "network-delay": "src.treatments.faults.NETWORK_DELAY",
        "packet-loss": "src.treatments.faults.PACKET_LOSS",
        "service-pause": "src.treatments.faults.SERVICE_PAUSE",
        "service-kill": "src.treatments.faults.SERVICE_KILL",
        "trace-sampling-rate": "src.treatments.instrumentation.TRACE_SAMPLING_RATE",
        "metric-scrape-interval": "src.treatments.instrumentation.METRIC_SCRAPE_INTERVAL",
        "alert-threshold": "src.treatments.instrumentation.ALERT_THRESHOLD",
        "instrumentation-point": "src.treatments.instrumentation.INSTRUMENTATION_POINT",
    }

    def _duplicate_error(self, name: str) -> Exception:
        return DuplicateTreatmentError(f"treatment '{name}' is already registered")

    def _unknown_error(self, name: str) -> Exception:
        return UnknownTreatmentError(
            f"unknown treatment '{name}'. Available: {', '.join(self.names())}"
        )

    def register(self, entry: TreatmentDescriptor) -> TreatmentDescriptor:
        taken = self.override_keys()
        for key in entry.overrides:
            if key in taken:
                raise DuplicateTreatmentError(
                    f"override key '{key}' of '{entry.name}' is already provided by '{taken[key].name}'"
                )
        return super().register(entry)

    def override_keys(self) -> dict[str, TreatmentDescriptor]:
        """Map every variant override key to the descriptor that owns it."""
        return {key: descriptor for descriptor in self for key in descriptor.overrides}

    def resolve_override(self, key: str) -> tuple[TreatmentDescriptor, str, str | None]:
        """Split a variant override key into (descriptor, parameter, qualifier).

        ``alert_threshold.frontend.latency_mean_ms`` resolves to the
        alert-threshold descriptor, its ``threshold`` parameter and the
        qualifier ``frontend.latency_mean_ms``.

        Raises:
            UnknownTreatmentError: no registered treatment owns the key
        """
        base, _, qualifier = key.partition(".")
        descriptor = self.override_keys().get(base)
        if descriptor is None:
            raise UnknownTreatmentError(f"unknown override key '{key}'")
        return descriptor, descriptor.overrides[base], qualifier or None


_default_registry: TreatmentRegistry | None = None


def default_registry() -> TreatmentRegistry:
    """Process-wide registry with the built-ins loaded."""
    global _default_registry
    if _default_registry is None:
        _default_registry = TreatmentRegistry()
    return _default_registry


def register_treatment(
    descriptor: TreatmentDescriptor, registry: TreatmentRegistry | None = None
) -> TreatmentDescriptor:
    """Make a treatment type available to plans.

    Args:
        descriptor: Parameter schema plus perturbation or configuration callback
        registry: Target registry (defaults to the process-wide one)

    Raises:
        DuplicateTreatmentError: the name or one of its override keys is taken
    """
    registry = registry if registry is not None else default_registry()
    registry.register(descriptor)
    logger.info(f"Registered treatment '{descriptor.name}' ({descriptor.kind.value})")
    return descriptor
