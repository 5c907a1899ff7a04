"""Command-line front end for the scoring workbench.

Exit code contract: 0 on success, 1 on runtime failures (I/O, corrupt
files), 2 on validation and usage errors. All output except the human
table/markdown formats is JSON, one document per invocation, so the CLI
is scriptable.

The active project file comes from --project, the RIDDLE_PROJECT
environment variable, or the sole *.riddle.json in the working
directory, in that order. --project also accepts a directory holding
exactly one project file.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

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
    sensitivity_within_band,
    set_asset_context,
    slugify,
    total_score,
    validate_project,
)
from .errors import EmptyAnswer, InvalidMeasurement, RiddleError, ValidationFailure
from .rubrics import (
    MeasurementKind,
    QUANTITATIVE_UNITS,
    RawMeasurement,
    ThreatLevel,
    Variable,
    classify_total,
    rubric_tables,
)
from .store import (
    file_revision,
    load_project,
    matrix_csv_text,
    project_lock,
    save_project,
)

_DURATION_SUFFIXES = {"s": 1.0, "m": 60.0, "h": 3600.0, "d": 86400.0, "w": 604800.0}

VARIABLE_CHOICES = [v.short for v in Variable]


def handle_errors(fn):
    """Map domain errors onto the exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationFailure as err:
            click.echo(f"riddle: error: {err.code}: {err}", err=True)
            sys.exit(2)
        except RiddleError as err:
            click.echo(f"riddle: error: {err.code}: {err}", err=True)
            sys.exit(1)

    return wrapper


def resolve_project_path(override: str | None) -> Path:
    """Find the project file; directories must contain exactly one."""
    candidate = Path(override) if override else Path.cwd()
    if candidate.is_file():
        return candidate
    if candidate.is_dir():
        matches = sorted(candidate.glob("*.riddle.json"))
        if len(matches) == 1:
            return matches[0]
        if not matches:
            raise click.UsageError(
                f"no *.riddle.json project file in {candidate}; "
                "run 'riddle init' or pass --project"
            )
        names = ", ".join(p.name for p in matches)
        raise click.UsageError(
            f"{candidate} holds several project files ({names}); pass --project explicitly"
        )
    raise click.UsageError(f"project path {candidate} does not exist")


def parse_raw_value(variable: Variable, text: str) -> RawMeasurement:
    """Parse a raw flag value using the variable's unit conventions.

    Durations take the suffixes s/m/h/d/w (seconds when bare); percentages
    take an optional %; euro amounts are plain numbers (a leading € is
    tolerated). Qualitative variables have no raw form.
    """
    if not variable.quantitative:
        raise InvalidMeasurement(
            f"{variable.value} takes --band, not --raw (it is scored by judgement)"
        )
    cleaned = text.strip().replace(" ", "")
    kind = QUANTITATIVE_UNITS[variable]
    try:
        if kind is MeasurementKind.DURATION:
            scale = 1.0
            if cleaned and cleaned[-1].lower() in _DURATION_SUFFIXES:
                scale = _DURATION_SUFFIXES[cleaned[-1].lower()]
                cleaned = cleaned[:-1]
            return RawMeasurement.duration(float(cleaned) * scale)
        if kind is MeasurementKind.PERCENTAGE:
            if cleaned.endswith("%"):
                cleaned = cleaned[:-1]
            return RawMeasurement.percentage(float(cleaned))
        cleaned = cleaned.lstrip("€")
        return RawMeasurement.euros(float(cleaned.replace(",", "")))
    except ValueError:
        raise InvalidMeasurement(
            f"cannot parse {text!r} as a {kind.value} value for {variable.value}"
        ) from None


def parse_band_flag(variable: Variable, text: str) -> int:
    """Accept a band index (1..5) or a score pair like 9-10 / 10-9."""
    from .rubrics import rubric_for

    cleaned = text.strip()
    rubric = rubric_for(variable)
    if "-" in cleaned:
        parts = cleaned.split("-")
        if len(parts) == 2 and all(p.strip().isdigit() for p in parts):
            pair = tuple(sorted(int(p) for p in parts))
            for band in rubric.bands:
                if (band.low_score, band.high_score) == pair:
                    return band.band_index
            raise InvalidMeasurement(
                f"{cleaned!r} is not a score pair of {variable.value}; "
                "valid pairs: 9-10, 7-8, 5-6, 3-4, 1-2"
            )
    if cleaned.isdigit() and 1 <= int(cleaned) <= 5:
        return int(cleaned)
    raise InvalidMeasurement(
        f"--band takes a band index 1..5 or a score pair like 9-10, got {text!r}"
    )


def _mutate_project(path: Path, fn):
    """Read-modify-write under the advisory lock."""
    with project_lock(path):
        project = load_project(path)
        result = fn(project)
        save_project(project, path)
    return project, result


@click.group()
@click.version_option(version=__version__, prog_name="riddle")
@click.option(
    "--project",
    "project_path",
    envvar="RIDDLE_PROJECT",
    default=None,
    metavar="PATH",
    help="Project file (or directory containing one). Env: RIDDLE_PROJECT.",
)
@click.pass_context
def main(ctx: click.Context, project_path: str | None) -> None:
    """Offensive-tool risk scoring: rubrics, assessments, matrix, reports."""
    ctx.obj = {"project_path": project_path}


@main.command()
@click.argument("directory", type=click.Path(file_okay=False))
@click.option("--name", default=None, help="Project name (default: directory name).")
@click.option("--asset", default="", help="Which asset do you want to secure?")
@click.option("--threats", default="", help="From which threats you want to secure them?")
@click.option("--losses", default="", help="How many losses you will face if you don't succeed?")
@click.option("--budget", default="", help="How many resources are you ready to invest for prevention?")
@click.option("--force", is_flag=True, help="Overwrite an existing project file.")
@click.option(
    "--non-interactive",
    is_flag=True,
    help="Never prompt; missing answers fail with exit code 2.",
)
@handle_errors
def init(directory, name, asset, threats, losses, budget, force, non_interactive) -> None:
    """Create a project and answer the four framing questions."""
    target_dir = Path(directory)
    project_name = (name or target_dir.resolve().name).strip()
    project = new_project(project_name)
    path = target_dir / f"{slugify(project_name)}.riddle.json"
    if path.exists() and not force:
        raise click.UsageError(f"{path} already exists; pass --force to overwrite")

    answers = {
        "asset_to_secure": asset,
        "threats_in_scope": threats,
        "loss_estimate": losses,
        "prevention_budget": budget,
    }
    interactive = sys.stdin.isatty() and not non_interactive
    for field, question in ASSET_QUESTIONS:
        if not answers[field].strip():
            if not interactive:
                raise EmptyAnswer(field, question)
            answers[field] = click.prompt(question)
    set_asset_context(project, AssetContext(**answers))

    target_dir.mkdir(parents=True, exist_ok=True)
    save_project(project, path)
    click.echo(json.dumps({"created": str(path), "project": project_name}))


@main.group()
def tool() -> None:
    """Manage observed offensive tools."""


@tool.command("add")
@click.option("--name", required=True, help="Tool name (unique within the project).")
@click.option("--category", required=True, help="Tool category (e.g. worm, explosive attack).")
@click.option("--principles", default="", help="Working principles of the tool.")
@click.option("--vulns", default="", help="Known vulnerabilities / countermeasures.")
@click.option("--source", "sources", multiple=True, help="Reference consulted (repeatable).")
@click.pass_context
@handle_errors
def tool_add(ctx, name, category, principles, vulns, sources) -> None:
    """Record a tool observation; its mode follows from the category."""
    path = resolve_project_path(ctx.obj["project_path"])
    refs = tuple(SourceRef.today(ref) for ref in sources)
    _, observation = _mutate_project(
        path,
        lambda p: add_tool(
            p,
            name=name,
            category=category,
            working_principles=principles,
            known_vulnerabilities=vulns,
            sources=refs,
        ),
    )
    click.echo(
        json.dumps(
            {
                "added": {
                    "id": observation.id,
                    "name": observation.name,
                    "category": observation.category,
                    "mode": observation.mode.value,
                }
            }
        )
    )


@main.command()
@click.argument("tool_key", metavar="TOOL")
@click.option(
    "--variable",
    required=True,
    type=click.Choice(VARIABLE_CHOICES, case_sensitive=False),
    help="Which variable to score (R, I, Dmg, Dis, L, E, C).",
)
@click.option("--band", "band_text", default=None, help="Band as index 1..5 or score pair like 9-10.")
@click.option("--raw", "raw_text", default=None, help="Raw measurement (30s, 2h, 85%, 1500).")
@click.option("--score", type=int, default=None, help="Explicit score inside the band.")
@click.option("--motivation", default="", help="Why this band/score (required for R and L).")
@click.option("--notes", default="", help="Free-form notes.")
@click.pass_context
@handle_errors
def score(ctx, tool_key, variable, band_text, raw_text, score, motivation, notes) -> None:
    """Score one variable of a tool, from a band choice or a raw value."""
    path = resolve_project_path(ctx.obj["project_path"])
    parsed_variable = Variable.parse(variable)
    raw = parse_raw_value(parsed_variable, raw_text) if raw_text is not None else None
    band_index = (
        parse_band_flag(parsed_variable, band_text) if band_text is not None else None
    )
    _, assessment = _mutate_project(
        path,
        lambda p: record_score(
            p,
            tool_key,
            parsed_variable,
            band_index=band_index,
            raw=raw,
            score=score,
            motivation=motivation,
            notes=notes,
        ),
    )
    entry = assessment.scores[parsed_variable]
    payload = {
        "scored": {
            "tool": assessment.tool_id,
            "variable": parsed_variable.value,
            "band": f"{entry.band.low_score}-{entry.band.high_score}",
            "score": entry.score,
            "complete": assessment.complete,
            "missing": [v.value for v in assessment.missing_variables()],
        }
    }
    if assessment.complete:
        total = total_score(assessment)
        payload["scored"]["score_total"] = total
        payload["scored"]["threat_level"] = classify_total(total).value
    click.echo(json.dumps(payload))


def _matrix_table(project: Project) -> str:
    result = build_matrix(project)
    header = ["Tool name", "R", "I", "Dmg", "Dis", "L", "E", "C", "Score", "Total"]
    rows = [
        [row.tool_name, *map(str, row.scores), str(row.score_total), row.threat_level.value]
        for row in result.rows
    ]
    widths = [max(len(line[i]) for line in [header, *rows]) for i in range(len(header))]
    def fmt(cells):
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines += [fmt(row) for row in rows]
    for excluded in result.excluded:
        missing = ", ".join(v.short for v in excluded.missing)
        lines.append(f"(excluded: {excluded.tool_name} is missing {missing})")
    return "\n".join(lines)


def _matrix_payload(project: Project) -> dict:
    result = build_matrix(project)
    return {
        "rows": [
            {
                "tool_id": row.tool_id,
                "tool_name": row.tool_name,
                "scores": dict(zip(VARIABLE_CHOICES, row.scores)),
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


@main.command()
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "csv", "json"]),
    default="table",
    show_default=True,
)
@click.pass_context
@handle_errors
def matrix(ctx, fmt) -> None:
    """Print the tool comparison matrix, most threatening first."""
    path = resolve_project_path(ctx.obj["project_path"])
    project = load_project(path)
    if fmt == "csv":
        click.echo(matrix_csv_text(project), nl=False)
    elif fmt == "json":
        click.echo(json.dumps(_matrix_payload(project), indent=2))
    else:
        click.echo(_matrix_table(project))


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def _report_markdown(project: Project) -> str:
    lines = [f"# {project.name}", ""]
    lines += ["## Asset context", ""]
    for field, question in ASSET_QUESTIONS:
        answer = getattr(project.context, field) or "(unanswered)"
        lines.append(f"- **{question}** {answer}")
    lines.append("")

    try:
        result = build_matrix(project)
    except RiddleError:
        result = None
    if result is not None:
        lines += ["## Tool comparison matrix", ""]
        # the duplicate D columns (Damage, Disruption timing) are kept as-is
        # in this human-readable view; machine exports use Dmg/Dis
        lines.append("| Tool name | R | I | D | D | L | E | C | Score | Total |")
        lines.append("|---|---|---|---|---|---|---|---|---|---|")
        for row in result.rows:
            cells = [_md_escape(row.tool_name), *map(str, row.scores),
                     str(row.score_total), row.threat_level.value]
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
        for excluded in result.excluded:
            missing = ", ".join(v.value for v in excluded.missing)
            lines.append(f"- excluded (incomplete): {excluded.tool_name} — missing {missing}")
        if result.excluded:
            lines.append("")

    for tool in project.tools:
        assessment = project.assessments.get(tool.id, ToolAssessment(tool.id))
        lines += [f"## {tool.name}", ""]
        lines.append(f"- category: {tool.category} ({tool.mode.value})")
        if tool.working_principles:
            lines.append(f"- working principles: {tool.working_principles}")
        if tool.known_vulnerabilities:
            lines.append(f"- known vulnerabilities: {tool.known_vulnerabilities}")
        for ref in tool.sources:
            lines.append(f"- source: {ref.reference} (accessed {ref.accessed.isoformat()})")
        lines.append("")
        if assessment.complete:
            total = total_score(assessment)
            level = classify_total(total)
            report = sensitivity_within_band(assessment)
            lines.append(f"**Score {total} — {level.value} threat.** {level.description}")
            lines.append("")
            span = f"{report.min_total}-{report.max_total}"
            reachable = ", ".join(
                lvl.value for lvl in ThreatLevel if lvl in report.levels_reachable
            )
            crossed = (
                "the classification can cross a threat-level boundary"
                if report.boundary_crossed
                else "the classification is stable"
            )
            lines.append(
                f"Within the chosen bands the total spans {span} "
                f"(reachable levels: {reachable}); {crossed}."
            )
            lines.append("")
        else:
            missing = ", ".join(v.value for v in assessment.missing_variables())
            lines.append(f"*Assessment incomplete; missing: {missing}.*")
            lines.append("")
        if assessment.scores:
            lines.append("| Variable | Score | Motivation | Notes |")
            lines.append("|---|---|---|---|")
            for variable in Variable:
                entry = assessment.scores.get(variable)
                if entry is None:
                    continue
                lines.append(
                    "| "
                    + " | ".join(
                        [
                            variable.value,
                            str(entry.score),
                            _md_escape(entry.motivation) or "—",
                            _md_escape(entry.notes) or "—",
                        ]
                    )
                    + " |"
                )
            lines.append("")
    return "\n".join(lines).rstrip() + "\n"


@main.command()
@click.option("--format", "fmt", type=click.Choice(["md"]), default="md", show_default=True)
@click.pass_context
@handle_errors
def report(ctx, fmt) -> None:
    """Render the full project as a Markdown report."""
    path = resolve_project_path(ctx.obj["project_path"])
    project = load_project(path)
    click.echo(_report_markdown(project), nl=False)


@main.command()
@click.pass_context
@handle_errors
def validate(ctx) -> None:
    """List project problems; exits 2 when error-severity findings exist."""
    path = resolve_project_path(ctx.obj["project_path"])
    project = load_project(path)
    findings = validate_project(project)
    payload = {
        "findings": [
            {
                "severity": f.severity,
                "code": f.code,
                "message": f.message,
                "subject": f.subject,
            }
            for f in findings
        ],
        "errors": sum(1 for f in findings if f.severity == "error"),
        "warnings": sum(1 for f in findings if f.severity == "warning"),
    }
    click.echo(json.dumps(payload, indent=2))
    if payload["errors"]:
        sys.exit(2)


@main.command()
@handle_errors
def rubrics() -> None:
    """Dump the full rubric tables (bands, boundaries, threat levels) as JSON."""
    click.echo(json.dumps(rubric_tables(), indent=2, ensure_ascii=False))


@main.command()
@click.option("--addr", default="127.0.0.1", show_default=True, help="Bind address.")
@click.option("--port", default=8000, show_default=True, type=int, help="Bind port.")
@click.option(
    "--data-dir",
    default=None,
    type=click.Path(file_okay=False),
    help="Directory of project files served by the API (default: the active project's directory, else the working directory).",
)
@click.option(
    "--ui",
    "ui_dir",
    default=None,
    type=click.Path(file_okay=False),
    help="Directory of built workbench assets (default: ./frontend/dist when present).",
)
@click.pass_context
@handle_errors
def serve(ctx, addr, port, data_dir, ui_dir) -> None:
    """Serve the HTTP API and the web workbench. No authentication: keep it local."""
    import uvicorn

    from .service import create_app

    if data_dir is None:
        override = ctx.obj["project_path"]
        if override:
            resolved = Path(override)
            data_dir = str(resolved.parent if resolved.is_file() else resolved)
        else:
            data_dir = "."
    if ui_dir is None:
        default_ui = Path("frontend") / "dist"
        ui_dir = str(default_ui) if default_ui.is_dir() else None
    click.echo(
        "WARNING: the workbench has no authentication; anyone who can reach "
        f"http://{addr}:{port} can read and modify every project in {data_dir}.",
        err=True,
    )
    app = create_app(data_dir, ui_dir)
    uvicorn.run(app, host=addr, port=port, log_level="warning")


if __name__ == "__main__":
    main()
