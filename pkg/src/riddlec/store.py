"""Project persistence: one JSON document per project, plus CSV export.

The on-disk schema is versioned (currently 1) and strict: unknown fields
are rejected with their path so a typo in a hand-edited file or a document
from a newer release fails loudly instead of being silently dropped.
Saves are atomic (write to a temp file in the same directory, then
rename over the target), so an interrupted write leaves the previous
document intact. An advisory lock file serializes writers; readers never
block.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from datetime import date, datetime, timezone
from pathlib import Path

from filelock import FileLock

from .assessment import (
    AssetContext,
    Project,
    SourceRef,
    ToolAssessment,
    ToolObservation,
    VariableScore,
    build_matrix,
    mode_for_category,
)
from .errors import (
    CorruptDocument,
    IoFailure,
    SchemaVersionMismatch,
    SerializationFailure,
    ValidationFailure,
)
from .rubrics import (
    MeasurementKind,
    RawMeasurement,
    Variable,
    rubric_for,
)

SCHEMA_VERSION = 1

CSV_HEADER = "Tool name,R,I,Dmg,Dis,L,E,C,Score,Total"

_CONTEXT_FIELDS = ("asset_to_secure", "threats_in_scope", "loss_estimate", "prevention_budget")
_TOOL_FIELDS = {
    "id", "name", "category", "mode", "working_principles", "known_vulnerabilities", "sources",
}
_SOURCE_FIELDS = {"reference", "accessed"}
_SCORE_FIELDS = {"band_index", "score", "motivation", "notes", "raw"}
_RAW_FIELDS = {"kind", "value"}
_TOP_FIELDS = {
    "schema_version", "name", "context", "tools", "assessments", "created_at", "modified_at",
}


def serialize_project(project: Project) -> dict:
    """Project as a JSON-ready dict; the inverse of parse_project."""
    return {
        "schema_version": SCHEMA_VERSION,
        "name": project.name,
        "context": {name: getattr(project.context, name) for name in _CONTEXT_FIELDS},
        "tools": [_tool_dict(tool) for tool in project.tools],
        "assessments": {
            tool_id: {
                "scores": {
                    variable.value: _score_dict(entry)
                    for variable, entry in assessment.scores.items()
                }
            }
            for tool_id, assessment in sorted(project.assessments.items())
        },
        "created_at": project.created_at.isoformat(),
        "modified_at": project.modified_at.isoformat(),
    }


def _tool_dict(tool: ToolObservation) -> dict:
    return {
        "id": tool.id,
        "name": tool.name,
        "category": tool.category,
        "mode": tool.mode.value,
        "working_principles": tool.working_principles,
        "known_vulnerabilities": tool.known_vulnerabilities,
        "sources": [
            {"reference": s.reference, "accessed": s.accessed.isoformat()} for s in tool.sources
        ],
    }


def _score_dict(entry: VariableScore) -> dict:
    return {
        "band_index": entry.band.band_index,
        "score": entry.score,
        "motivation": entry.motivation,
        "notes": entry.notes,
        "raw": None if entry.raw is None else {"kind": entry.raw.kind.value, "value": entry.raw.value},
    }


def _expect(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise CorruptDocument(f"{path}: {message}", field_path=path)


def _expect_str(value, path: str) -> str:
    _expect(isinstance(value, str), path, f"expected text, got {type(value).__name__}")
    return value


def _reject_unknown(mapping: dict, allowed: set[str], path: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        name = sorted(unknown)[0]
        raise CorruptDocument(f"{path}.{name}: unknown field", field_path=f"{path}.{name}")


def _parse_timestamp(value, path: str) -> datetime:
    _expect_str(value, path)
    try:
        stamp = datetime.fromisoformat(value)
    except ValueError as err:
        raise CorruptDocument(f"{path}: invalid timestamp ({err})", field_path=path) from None
    _expect(stamp.tzinfo is not None, path, "timestamp must carry a timezone")
    return stamp.astimezone(timezone.utc)


def parse_project(data) -> Project:
    """Validate a document dict and rebuild the project; the inverse of serialize_project."""
    _expect(isinstance(data, dict), "$", "document must be a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"document schema_version {version!r} is not supported (expected {SCHEMA_VERSION})"
        )
    _reject_unknown(data, _TOP_FIELDS, "$")
    for required in _TOP_FIELDS:
        _expect(required in data, f"$.{required}", "missing required field")

    name = _expect_str(data["name"], "$.name")
    _expect(bool(name.strip()), "$.name", "project name must not be empty")

    context_data = data["context"]
    _expect(isinstance(context_data, dict), "$.context", "expected object")
    _reject_unknown(context_data, set(_CONTEXT_FIELDS), "$.context")
    context_kwargs = {}
    for field_name in _CONTEXT_FIELDS:
        value = context_data.get(field_name, "")
        context_kwargs[field_name] = _expect_str(value, f"$.context.{field_name}")

    tools_data = data["tools"]
    _expect(isinstance(tools_data, list), "$.tools", "expected array")
    tools = [_parse_tool(item, f"$.tools[{i}]") for i, item in enumerate(tools_data)]
    ids = [tool.id for tool in tools]
    _expect(len(ids) == len(set(ids)), "$.tools", "tool ids must be unique")

    assessments_data = data["assessments"]
    _expect(isinstance(assessments_data, dict), "$.assessments", "expected object")
    assessments: dict[str, ToolAssessment] = {}
    for tool_id, body in assessments_data.items():
        path = f"$.assessments.{tool_id}"
        _expect(tool_id in set(ids), path, "assessment references a tool that does not exist")
        _expect(isinstance(body, dict), path, "expected object")
        _reject_unknown(body, {"scores"}, path)
        scores_data = body.get("scores", {})
        _expect(isinstance(scores_data, dict), f"{path}.scores", "expected object")
        assessment = ToolAssessment(tool_id=tool_id)
        for variable_name, entry in scores_data.items():
            entry_path = f"{path}.scores.{variable_name}"
            variable = _parse_variable(variable_name, entry_path)
            assessment.scores[variable] = _parse_score(variable, entry, entry_path)
        assessments[tool_id] = assessment

    project = Project(
        name=name.strip(),
        context=AssetContext(**context_kwargs),
        tools=tools,
        assessments=assessments,
        created_at=_parse_timestamp(data["created_at"], "$.created_at"),
        modified_at=_parse_timestamp(data["modified_at"], "$.modified_at"),
    )
    for tool in project.tools:
        project.assessments.setdefault(tool.id, ToolAssessment(tool_id=tool.id))
    return project


def _parse_variable(name: str, path: str) -> Variable:
    for variable in Variable:
        if variable.value == name:
            return variable
    raise CorruptDocument(f"{path}: unknown variable {name!r}", field_path=path)


def _parse_tool(data, path: str) -> ToolObservation:
    _expect(isinstance(data, dict), path, "expected object")
    _reject_unknown(data, _TOOL_FIELDS, path)
    for required in ("id", "name", "category", "mode"):
        _expect(required in data, f"{path}.{required}", "missing required field")
    tool_id = _expect_str(data["id"], f"{path}.id")
    tool_name = _expect_str(data["name"], f"{path}.name")
    category = _expect_str(data["category"], f"{path}.category")
    try:
        mode = mode_for_category(category)
    except ValidationFailure as err:
        raise CorruptDocument(f"{path}.category: {err}", field_path=f"{path}.category") from None
    stored_mode = _expect_str(data["mode"], f"{path}.mode")
    _expect(
        stored_mode == mode.value,
        f"{path}.mode",
        f"mode {stored_mode!r} contradicts category {category!r} (expected {mode.value!r})",
    )
    sources_data = data.get("sources", [])
    _expect(isinstance(sources_data, list), f"{path}.sources", "expected array")
    sources = []
    for i, source in enumerate(sources_data):
        source_path = f"{path}.sources[{i}]"
        _expect(isinstance(source, dict), source_path, "expected object")
        _reject_unknown(source, _SOURCE_FIELDS, source_path)
        reference = _expect_str(source.get("reference", ""), f"{source_path}.reference")
        accessed_text = _expect_str(source.get("accessed", ""), f"{source_path}.accessed")
        try:
            accessed = date.fromisoformat(accessed_text)
        except ValueError as err:
            raise CorruptDocument(
                f"{source_path}.accessed: invalid date ({err})",
                field_path=f"{source_path}.accessed",
            ) from None
        sources.append(SourceRef(reference, accessed))
    return ToolObservation(
        id=tool_id,
        name=tool_name,
        category=category,
        mode=mode,
        working_principles=_expect_str(data.get("working_principles", ""), f"{path}.working_principles"),
        known_vulnerabilities=_expect_str(
            data.get("known_vulnerabilities", ""), f"{path}.known_vulnerabilities"
        ),
        sources=tuple(sources),
    )


def _parse_score(variable: Variable, data, path: str) -> VariableScore:
    _expect(isinstance(data, dict), path, "expected object")
    _reject_unknown(data, _SCORE_FIELDS, path)
    band_index = data.get("band_index")
    _expect(isinstance(band_index, int) and not isinstance(band_index, bool), f"{path}.band_index",
            "expected integer 1..5")
    _expect(1 <= band_index <= 5, f"{path}.band_index", f"band index {band_index} not in 1..5")
    score = data.get("score")
    _expect(isinstance(score, int) and not isinstance(score, bool), f"{path}.score",
            "expected integer 1..10")
    raw_data = data.get("raw")
    raw = None
    if raw_data is not None:
        raw_path = f"{path}.raw"
        _expect(isinstance(raw_data, dict), raw_path, "expected object or null")
        _reject_unknown(raw_data, _RAW_FIELDS, raw_path)
        kind_name = _expect_str(raw_data.get("kind", ""), f"{raw_path}.kind")
        try:
            kind = MeasurementKind(kind_name)
        except ValueError:
            raise CorruptDocument(
                f"{raw_path}.kind: unknown measurement kind {kind_name!r}",
                field_path=f"{raw_path}.kind",
            ) from None
        value = raw_data.get("value")
        _expect(isinstance(value, (int, float)) and not isinstance(value, bool),
                f"{raw_path}.value", "expected number")
        try:
            raw = RawMeasurement(kind, float(value))
        except ValidationFailure as err:
            raise CorruptDocument(f"{raw_path}: {err}", field_path=raw_path) from None
    band = rubric_for(variable).band(band_index)
    try:
        return VariableScore(
            variable=variable,
            band=band,
            score=score,
            motivation=_expect_str(data.get("motivation", ""), f"{path}.motivation"),
            notes=_expect_str(data.get("notes", ""), f"{path}.notes"),
            raw=raw,
        )
    except ValidationFailure as err:
        raise CorruptDocument(f"{path}: {err}", field_path=path) from None


def _document_bytes(project: Project) -> bytes:
    try:
        text = json.dumps(serialize_project(project), indent=2, ensure_ascii=False, sort_keys=False)
    except (TypeError, ValueError) as err:
        raise SerializationFailure(f"project cannot be serialized: {err}") from None
    return (text + "\n").encode("utf-8")


def project_lock(path: str | Path) -> FileLock:
    """Advisory writer lock for the given project file.

    Singleton per path so nested acquisition (a caller holding the lock
    across a load-modify-save sequence) is reentrant instead of deadlocking.
    """
    return FileLock(str(Path(path)) + ".lock", is_singleton=True, timeout=10)


def save_project(project: Project, path: str | Path) -> None:
    """Atomically write the project document; holds the advisory lock."""
    target = Path(path)
    payload = _document_bytes(project)
    if not target.parent.is_dir():
        # the lock library would create missing directories as a side effect;
        # a mistyped path should fail instead
        raise IoFailure(f"cannot write project file {target}: no such directory {target.parent}")
    try:
        with project_lock(target):
            fd, temp_name = tempfile.mkstemp(
                dir=str(target.parent) or ".", prefix=target.name, suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "wb") as handle:
                    handle.write(payload)
                    handle.flush()
                    os.fsync(handle.fileno())
                os.replace(temp_name, target)
            except BaseException:
                if os.path.exists(temp_name):
                    os.unlink(temp_name)
                raise
    except OSError as err:
        raise IoFailure(f"cannot write project file {target}: {err}") from None


def load_project(path: str | Path) -> Project:
    target = Path(path)
    try:
        payload = target.read_bytes()
    except OSError as err:
        raise IoFailure(f"cannot read project file {target}: {err}") from None
    try:
        data = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        raise CorruptDocument(f"$: not a valid JSON document ({err})", field_path="$") from None
    return parse_project(data)


def file_revision(path: str | Path) -> str:
    """Content-hash revision token for optimistic concurrency (16 hex chars)."""
    try:
        payload = Path(path).read_bytes()
    except OSError as err:
        raise IoFailure(f"cannot read project file {path}: {err}") from None
    return hashlib.sha256(payload).hexdigest()[:16]


def matrix_csv_text(project: Project) -> str:
    """The comparison matrix as CSV with the fixed header, newline-terminated."""
    result = build_matrix(project)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in result.rows:
        writer.writerow(
            [row.tool_name, *row.scores, row.score_total, row.threat_level.value]
        )
    return buffer.getvalue()


def export_matrix_csv(project: Project, path: str | Path) -> None:
    text = matrix_csv_text(project)
    try:
        Path(path).write_text(text, encoding="utf-8", newline="")
    except OSError as err:
        raise IoFailure(f"cannot write CSV file {path}: {err}") from None
