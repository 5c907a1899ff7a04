"""Offensive-tool risk scoring workbench: rubrics, assessments, storage, API, CLI."""

from .errors import RiddleError, ValidationFailure
from .rubrics import (
    DisruptionMode,
    MeasurementKind,
    RawMeasurement,
    Rubric,
    ScoreBand,
    ThreatLevel,
    Variable,
    builtin_rubrics,
    classify_total,
    derive_band,
    refine_score,
    rubric_for,
    rubric_tables,
)

__version__ = "1.0.0"

__all__ = [
    "DisruptionMode",
    "MeasurementKind",
    "RawMeasurement",
    "RiddleError",
    "Rubric",
    "ScoreBand",
    "ThreatLevel",
    "ValidationFailure",
    "Variable",
    "builtin_rubrics",
    "classify_total",
    "derive_band",
    "refine_score",
    "rubric_for",
    "rubric_tables",
    "__version__",
]
