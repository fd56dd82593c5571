"""Fault visibility, detection latency and cost overhead of experiment runs.

Usage:
    from src.analysis import build_assessment, visibility_score

    report = build_assessment(plan, topology, runs, AnalysisSettings())
"""

from .assessment import AnalysisSettings, build_assessment, score_variable, write_assessment, write_plot_files
from .compare import Comparison, IncompatibleAssessmentsError, compare_assessments, load_assessment
from .detection import alert_latencies, detection_latency
from .overhead import OverheadReport, overhead
from .plotdata import PLOT_COLUMNS, PlotRow, plot_rows, write_plotdata
from .response import (
    Label,
    LabeledObservation,
    Observation,
    UnknownSeriesError,
    aggregate_series,
    extract_response,
    label_counts,
    label_observations,
)
from .stats import MannWhitneyResult, mann_whitney
from .visibility import NO_DATA_VERDICT, Undetectable, VisibilityScore, visibility_score, youden_threshold

__all__ = [
    "AnalysisSettings",
    "Comparison",
    "IncompatibleAssessmentsError",
    "Label",
    "LabeledObservation",
    "MannWhitneyResult",
    "NO_DATA_VERDICT",
    "Observation",
    "OverheadReport",
    "PLOT_COLUMNS",
    "PlotRow",
    "Undetectable",
    "UnknownSeriesError",
    "VisibilityScore",
    "aggregate_series",
    "alert_latencies",
    "build_assessment",
    "compare_assessments",
    "detection_latency",
    "extract_response",
    "label_counts",
    "label_observations",
    "load_assessment",
    "mann_whitney",
    "overhead",
    "plot_rows",
    "score_variable",
    "visibility_score",
    "write_assessment",
    "write_plot_files",
    "write_plotdata",
    "youden_threshold",
]
