"""HTTP API for the scoring workbench, plus static hosting for the UI.

The service is a thin shell: every number it returns comes from the core
modules, so API totals can never drift from library totals. Rubric data
is serialized once at import time and served byte-identical on every
request; the UI treats it as the single source of band text, intervals,
and thresholds.

Projects live as JSON documents in one data directory, one file per
project, reusing the store layer's locking and atomic writes. Optimistic
concurrency uses a content-hash revision token: mutating requests may
carry the revision they last saw and are rejected with 409 when the file
has changed under them.

There is no authentication: this is a single-analyst local tool and the
server must only be bound to interfaces you trust.
"""

from __future__ import annotations

import json
from datetime import date
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .assessment import (
    ASSET_QUESTIONS,
    AssetContext,
    Project,
    SourceRef,
    ToolAssessment,
    add_tool,
    build_matrix,
    new_project,
    record_score,
    remove_tool,
    sensitivity_within_band,
    set_asset_context,
    slugify,
    total_score,
    validate_project,
)
from .errors import (
    DuplicateProject,
    InvalidMeasurement,
    NoCompleteAssessments,
    RiddleError,
    StaleRevision,
    UnknownProject,
)
from .rubrics import (
    DisruptionMode,
    MeasurementKind,
    RawMeasurement,
    ThreatLevel,
    Variable,
    classify_total,
    derive_band,
    refine_score,
    rubric_for,
    rubric_tables,
)
from .store import (
    file_revision,
    load_project,
    matrix_csv_text,
    project_lock,
    save_project,
)

# Serialized once: the contract requires byte-identical responses.
_RUBRIC_BYTES = json.dumps(rubric_tables(), ensure_ascii=False, indent=2).encode("utf-8")

_QUESTIONS_PAYLOAD = {
    "questions": [{"field": field, "question": question} for field, question in ASSET_QUESTIONS]
}

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>riddle workbench</title></head>
<body><h1>riddle API is running</h1>
<p>The web workbench has not been built. The HTTP API is live under <code>/api</code>;
start with <a href="/api/rubrics">/api/rubrics</a>.</p></body></html>
"""


class ProjectRepository:
    """All projects under one directory, one `<id>.riddle.json` per project."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, project_id: str) -> Path:
        return self.data_dir / f"{project_id}.riddle.json"

    def ids(self) -> list[str]:
        return sorted(p.name[: -len(".riddle.json")] for p in self.data_dir.glob("*.riddle.json"))

    def create(self, name: str) -> tuple[str, Project, str]:
        project = new_project(name)
        project_id = slugify(project.name)
        path = self.path_for(project_id)
        with project_lock(path):
            if path.exists():
                raise DuplicateProject(f"project {project_id!r} already exists")
            save_project(project, path)
            return project_id, project, file_revision(path)

    def get(self, project_id: str) -> tuple[Project, str]:
        path = self.path_for(project_id)
        if not path.exists():
            raise UnknownProject(f"no project {project_id!r}")
        return load_project(path), file_revision(path)

    def delete(self, project_id: str) -> None:
        path = self.path_for(project_id)
        if not path.exists():
            raise UnknownProject(f"no project {project_id!r}")
        path.unlink()
        lock_file = Path(str(path) + ".lock")
        if lock_file.exists():
            lock_file.unlink()

    def mutate(self, project_id: str, expected_revision: str | None, fn) -> tuple[Project, str, object]:
        """Load, apply fn, save. Rejects stale revisions under the write lock."""
        path = self.path_for(project_id)
        if not path.exists():
            raise UnknownProject(f"no project {project_id!r}")
        with project_lock(path):
            current = file_revision(path)
            if expected_revision is not None and expected_revision != current:
                raise StaleRevision(
                    f"project {project_id!r} changed (revision {current}, request sent {expected_revision})"
                )
            project = load_project(path)
            result = fn(project)
            save_project(project, path)
            return project, file_revision(path), result


class ContextBody(BaseModel):
    asset_to_secure: str = ""
    threats_in_scope: str = ""
    loss_estimate: str = ""
    prevention_budget: str = ""
    revision: str | None = None


class ProjectBody(BaseModel):
    name: str
    context: ContextBody | None = None


class SourceBody(BaseModel):
    reference: str
    accessed: date | None = None


class ToolBody(BaseModel):
    name: str
    category: str
    working_principles: str = ""
    known_vulnerabilities: str = ""
    sources: list[SourceBody] = Field(default_factory=list)
    revision: str | None = None


class RawBody(BaseModel):
    kind: str
    value: float


class DeriveBody(BaseModel):
    variable: str
    raw: RawBody
    mode: str = "kinetic"


class ScoreBody(BaseModel):
    variable: str
    band_index: int | None = None
    raw: RawBody | None = None
    score: int | None = None
    motivation: str = ""
    notes: str = ""
    revision: str | None = None


def _parse_raw(body: RawBody) -> RawMeasurement:
    try:
        kind = MeasurementKind(body.kind)
    except ValueError:
        valid = ", ".join(k.value for k in MeasurementKind if k is not MeasurementKind.QUALITATIVE)
        raise InvalidMeasurement(
            f"unknown measurement kind {body.kind!r}; expected one of: {valid}"
        ) from None
    if kind is MeasurementKind.QUALITATIVE:
        raise InvalidMeasurement("qualitative scores are set with a band index, not a raw value")
    return RawMeasurement(kind, body.value)


def _parse_mode(name: str) -> DisruptionMode:
    try:
        return DisruptionMode(name.lower())
    except ValueError:
        raise InvalidMeasurement(
            f"unknown mode {name!r}; expected kinetic or cyber"
        ) from None


def _band_json(band) -> dict:
    return {
        "band_index": band.band_index,
        "low_score": band.low_score,
        "high_score": band.high_score,
        "description": band.description,
    }


def _score_json(entry) -> dict:
    return {
        "variable": entry.variable.value,
        "short": entry.variable.short,
        "band": _band_json(entry.band),
        "score": entry.score,
        "motivation": entry.motivation,
        "notes": entry.notes,
        "raw": None if entry.raw is None else {"kind": entry.raw.kind.value, "value": entry.raw.value},
    }


def _assessment_json(assessment: ToolAssessment) -> dict:
    complete = assessment.complete
    body = {
        "tool_id": assessment.tool_id,
        "scores": {v.value: _score_json(s) for v, s in assessment.scores.items()},
        "scored": len(assessment.scores),
        "complete": complete,
        "missing": [v.value for v in assessment.missing_variables()],
        "score_total": None,
        "threat_level": None,
    }
    if complete:
        total = total_score(assessment)
        body["score_total"] = total
        body["threat_level"] = classify_total(total).value
    return body


def _tool_json(tool) -> dict:
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


def _project_json(project_id: str, project: Project, revision: str) -> dict:
    return {
        "id": project_id,
        "revision": revision,
        "name": project.name,
        "context": {field: getattr(project.context, field) for field, _ in ASSET_QUESTIONS},
        "context_complete": project.context.complete,
        "tools": [_tool_json(t) for t in project.tools],
        "assessments": {
            tool_id: _assessment_json(a) for tool_id, a in sorted(project.assessments.items())
        },
        "created_at": project.created_at.isoformat(),
        "modified_at": project.modified_at.isoformat(),
    }


def _matrix_json(project: Project) -> dict:
    try:
        result = build_matrix(project)
    except NoCompleteAssessments:
        incomplete = [
            {
                "tool_id": t.id,
                "tool_name": t.name,
                "missing": [
                    v.value
                    for v in project.assessments.get(t.id, ToolAssessment(t.id)).missing_variables()
                ],
            }
            for t in project.tools
        ]
        return {"rows": [], "excluded": incomplete}
    return {
        "rows": [
            {
                "tool_id": row.tool_id,
                "tool_name": row.tool_name,
                "scores": dict(zip(("R", "I", "Dmg", "Dis", "L", "E", "C"), row.scores)),
                "score_total": row.score_total,
                "threat_level": row.threat_level.value,
            }
            for row in result.rows
        ],
        "excluded": [
            {
                "tool_id": ex.tool_id,
                "tool_name": ex.tool_name,
                "missing": [v.value for v in ex.missing],
            }
            for ex in result.excluded
        ],
    }


def create_app(data_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    repo = ProjectRepository(data_dir)
    app = FastAPI(title="riddle workbench", version=__version__, docs_url="/api/docs",
                  openapi_url="/api/openapi.json")

    @app.exception_handler(RiddleError)
    async def riddle_error_handler(request: Request, err: RiddleError):
        return JSONResponse(
            status_code=err.http_status,
            content={
                "error": {
                    "code": err.code,
                    "message": str(err),
                    "field_path": err.field_path,
                }
            },
        )

    @app.exception_handler(RequestValidationError)
    async def body_error_handler(request: Request, err: RequestValidationError):
        first = err.errors()[0] if err.errors() else {}
        where = ".".join(str(part) for part in first.get("loc", ()))
        message = first.get("msg", "invalid request body")
        return JSONResponse(
            status_code=400,
            content={
                "error": {
                    "code": "validation_failure",
                    "message": f"{where}: {message}" if where else message,
                    "field_path": where or None,
                }
            },
        )

    @app.get("/api/rubrics")
    def get_rubrics() -> Response:
        return Response(content=_RUBRIC_BYTES, media_type="application/json")

    @app.get("/api/questions")
    def get_questions() -> dict:
        return _QUESTIONS_PAYLOAD

    @app.post("/api/derive")
    def post_derive(body: DeriveBody) -> dict:
        variable = Variable.parse(body.variable)
        raw = _parse_raw(body.raw)
        mode = _parse_mode(body.mode)
        band = derive_band(variable, raw, mode)
        default = refine_score(band, None, rubric_for(variable), mode)
        return {
            "variable": variable.value,
            "band": _band_json(band),
            "default_score": default,
        }

    @app.get("/api/projects")
    def list_projects() -> dict:
        entries = []
        for project_id in repo.ids():
            project, revision = repo.get(project_id)
            entries.append(
                {
                    "id": project_id,
                    "name": project.name,
                    "revision": revision,
                    "tools": len(project.tools),
                    "modified_at": project.modified_at.isoformat(),
                }
            )
        return {"projects": entries}

    @app.post("/api/projects", status_code=201)
    def create_project(body: ProjectBody) -> dict:
        project_id, project, revision = repo.create(body.name)
        if body.context is not None:
            context = AssetContext(
                asset_to_secure=body.context.asset_to_secure,
                threats_in_scope=body.context.threats_in_scope,
                loss_estimate=body.context.loss_estimate,
                prevention_budget=body.context.prevention_budget,
            )
            project, revision, _ = repo.mutate(
                project_id, revision, lambda p: set_asset_context(p, context)
            )
        return _project_json(project_id, project, revision)

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str) -> dict:
        project, revision = repo.get(project_id)
        return _project_json(project_id, project, revision)

    @app.delete("/api/projects/{project_id}", status_code=204)
    def delete_project(project_id: str) -> Response:
        repo.delete(project_id)
        return Response(status_code=204)

    @app.put("/api/projects/{project_id}/context")
    def put_context(project_id: str, body: ContextBody) -> dict:
        context = AssetContext(
            asset_to_secure=body.asset_to_secure,
            threats_in_scope=body.threats_in_scope,
            loss_estimate=body.loss_estimate,
            prevention_budget=body.prevention_budget,
        )
        project, revision, _ = repo.mutate(
            project_id, body.revision, lambda p: set_asset_context(p, context)
        )
        return _project_json(project_id, project, revision)

    @app.post("/api/projects/{project_id}/tools", status_code=201)
    def post_tool(project_id: str, body: ToolBody) -> dict:
        sources = tuple(
            SourceRef(s.reference, s.accessed or date.today()) for s in body.sources
        )
        project, revision, tool = repo.mutate(
            project_id,
            body.revision,
            lambda p: add_tool(
                p,
                name=body.name,
                category=body.category,
                working_principles=body.working_principles,
                known_vulnerabilities=body.known_vulnerabilities,
                sources=sources,
            ),
        )
        return {"revision": revision, "tool": _tool_json(tool)}

    @app.delete("/api/projects/{project_id}/tools/{tool_id}")
    def delete_tool(project_id: str, tool_id: str, revision: str | None = None) -> dict:
        project, new_revision, _ = repo.mutate(
            project_id, revision, lambda p: remove_tool(p, tool_id)
        )
        return {"revision": new_revision}

    @app.post("/api/projects/{project_id}/tools/{tool_id}/scores")
    def post_score(project_id: str, tool_id: str, body: ScoreBody) -> dict:
        variable = Variable.parse(body.variable)
        raw = None if body.raw is None else _parse_raw(body.raw)
        project, revision, assessment = repo.mutate(
            project_id,
            body.revision,
            lambda p: record_score(
                p,
                tool_id,
                variable,
                band_index=body.band_index,
                raw=raw,
                score=body.score,
                motivation=body.motivation,
                notes=body.notes,
            ),
        )
        return {"revision": revision, "assessment": _assessment_json(assessment)}

    @app.get("/api/projects/{project_id}/matrix")
    def get_matrix(project_id: str) -> dict:
        project, revision = repo.get(project_id)
        payload = _matrix_json(project)
        payload["revision"] = revision
        return payload

    @app.get("/api/projects/{project_id}/matrix.csv")
    def get_matrix_csv(project_id: str) -> Response:
        project, _ = repo.get(project_id)
        text = matrix_csv_text(project)  # raises NoCompleteAssessments -> 400
        headers = {"Content-Disposition": f'attachment; filename="{project_id}-matrix.csv"'}
        return Response(content=text, media_type="text/csv; charset=utf-8", headers=headers)

    @app.get("/api/projects/{project_id}/sensitivity")
    def get_sensitivity(project_id: str) -> dict:
        project, revision = repo.get(project_id)
        reports = []
        excluded = []
        for tool in project.tools:
            assessment = project.assessments.get(tool.id, ToolAssessment(tool.id))
            if not assessment.complete:
                excluded.append(
                    {
                        "tool_id": tool.id,
                        "tool_name": tool.name,
                        "missing": [v.value for v in assessment.missing_variables()],
                    }
                )
                continue
            report = sensitivity_within_band(assessment)
            ordered = [level.value for level in ThreatLevel if level in report.levels_reachable]
            reports.append(
                {
                    "tool_id": report.tool_id,
                    "tool_name": tool.name,
                    "min_total": report.min_total,
                    "max_total": report.max_total,
                    "levels_reachable": ordered,
                    "boundary_crossed": report.boundary_crossed,
                }
            )
        return {"revision": revision, "reports": reports, "excluded": excluded}

    @app.get("/api/projects/{project_id}/validate")
    def get_validation(project_id: str) -> dict:
        project, revision = repo.get(project_id)
        return {
            "revision": revision,
            "findings": [
                {
                    "severity": f.severity,
                    "code": f.code,
                    "message": f.message,
                    "subject": f.subject,
                }
                for f in validate_project(project)
            ],
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def fallback_root() -> str:
            return _FALLBACK_PAGE

    return app
