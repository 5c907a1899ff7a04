"""Error types shared across the workbench.

Every error carries a stable machine code (used by the HTTP layer and for
machine-parseable CLI output) and an HTTP status hint. User-input problems
derive from ValidationFailure; infrastructure problems derive directly
from RiddleError.
"""

from __future__ import annotations


class RiddleError(Exception):
    """Base class for all workbench errors."""

    code = "error"
    http_status = 500

    def __init__(self, message: str, field_path: str | None = None):
        super().__init__(message)
        self.field_path = field_path


class ValidationFailure(RiddleError):
    """A request or input that the domain rules reject."""

    code = "validation_failure"
    http_status = 400


class UnitMismatch(ValidationFailure):
    code = "unit_mismatch"


class QualitativeVariable(ValidationFailure):
    code = "qualitative_variable"


class InvalidMeasurement(ValidationFailure):
    code = "invalid_measurement"


class OutOfBand(ValidationFailure):
    code = "out_of_band"


class OutOfRange(ValidationFailure):
    code = "out_of_range"


class EmptyAnswer(ValidationFailure):
    """An asset-context question is unanswered. Names the missing field."""

    code = "empty_answer"

    def __init__(self, field: str, question: str | None = None):
        detail = f' ("{question}")' if question else ""
        super().__init__(f"answer required: {field}{detail}", field_path=field)
        self.field = field


class DuplicateTool(ValidationFailure):
    code = "duplicate_tool"
    http_status = 409


class UnknownCategory(ValidationFailure):
    code = "unknown_category"


class QualitativeNeedsMotivation(ValidationFailure):
    code = "qualitative_needs_motivation"


class ScoreOutsideBand(ValidationFailure):
    code = "score_outside_band"


class UnknownTool(ValidationFailure):
    code = "unknown_tool"
    http_status = 404


class IncompleteAssessment(ValidationFailure):
    code = "incomplete_assessment"

    def __init__(self, message: str, missing: list | None = None):
        super().__init__(message)
        self.missing = list(missing or [])


class NoCompleteAssessments(ValidationFailure):
    code = "no_complete_assessments"


class UnknownProject(ValidationFailure):
    code = "unknown_project"
    http_status = 404


class DuplicateProject(ValidationFailure):
    code = "duplicate_project"
    http_status = 409


class StaleRevision(ValidationFailure):
    code = "stale_revision"
    http_status = 409


class SchemaVersionMismatch(RiddleError):
    code = "schema_version_mismatch"
    http_status = 400


class CorruptDocument(RiddleError):
    """A project document that fails structural validation."""

    code = "corrupt_document"
    http_status = 400


class IoFailure(RiddleError):
    code = "io_failure"
    http_status = 500


class SerializationFailure(RiddleError):
    code = "serialization_failure"
    http_status = 500
