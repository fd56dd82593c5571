"""Validation of engine settings."""

from .validate import ConfigValidator

__all__ = ["ConfigValidator"]
