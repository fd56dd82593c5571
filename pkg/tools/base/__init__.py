"""Shared base classes for registries."""

from .selector import BaseRegistry, load_object

__all__ = ["BaseRegistry", "load_object"]
