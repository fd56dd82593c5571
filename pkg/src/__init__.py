"""oxlab: observability experiment engine."""

__version__ = "0.1.0"
