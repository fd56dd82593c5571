"""Fault and instrumentation treatments behind one extension interface.

Usage:
    from src.treatments import TreatmentDescriptor, register_treatment

    register_treatment(my_descriptor)
    schedule = compile_treatments(plan, variant)
"""

from .base import (
    AlertRule,
    CallContext,
    CallPerturbation,
    DuplicateTreatmentError,
    InstrumentationConfig,
    TreatmentConflictError,
    TreatmentDescriptor,
    UnknownTreatmentError,
)
from .registry import TreatmentRegistry, default_registry, register_treatment
from .schedule import CompiledFault, ScheduleEvent, TreatmentSchedule, apply_fault, compile_treatments
from .spec import TargetKind, TargetRef, TreatmentKind, TreatmentSpec, parse_target

__all__ = [
    "AlertRule",
    "CallContext",
    "CallPerturbation",
    "CompiledFault",
    "DuplicateTreatmentError",
    "InstrumentationConfig",
    "ScheduleEvent",
    "TargetKind",
    "TargetRef",
    "TreatmentConflictError",
    "TreatmentDescriptor",
    "TreatmentKind",
    "TreatmentRegistry",
    "TreatmentSchedule",
    "TreatmentSpec",
    "UnknownTreatmentError",
    "apply_fault",
    "compile_treatments",
    "default_registry",
    "parse_target",
    "register_treatment",
]
