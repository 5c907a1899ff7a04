"""Project and tool-assessment model.

A project holds the asset context (the four framing questions an analyst
answers before scoring), the observed offensive tools, and one assessment
per tool. An assessment collects up to seven variable scores, each tied
to a rubric band, with the analyst's motivation and notes. Complete
assessments aggregate into the comparison matrix and can be stress-tested
for within-band classification stability.

All mutating operations go through the functions in this module so the
invariants (unique tool ids, scores matching bands, the scoring gate on
the asset questions) hold no matter which front end drives them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from datetime import date, datetime, timezone

from .errors import (
    DuplicateTool,
    EmptyAnswer,
    IncompleteAssessment,
    InvalidMeasurement,
    NoCompleteAssessments,
    QualitativeNeedsMotivation,
    QualitativeVariable,
    ScoreOutsideBand,
    UnknownCategory,
    UnknownTool,
)
from .rubrics import (
    DisruptionMode,
    RawMeasurement,
    ScoreBand,
    ThreatLevel,
    Variable,
    classify_total,
    derive_band,
    rubric_for,
)

# The four framing questions, asked in this order before any scoring.
ASSET_QUESTIONS: tuple[tuple[str, str], ...] = (
    ("asset_to_secure", "Which asset do you want to secure?"),
    ("threats_in_scope", "From which threats you want to secure them?"),
    ("loss_estimate", "How many losses you will face if you don't succeed?"),
    ("prevention_budget", "How many resources are you ready to invest for prevention?"),
)

CYBER_CATEGORIES = (
    "virus",
    "worm",
    "trojan horse",
    "remote access tool",
    "malicious code",
)

KINETIC_CATEGORIES = (
    "explosive attack",
    "vandalism",
    "chemical attack",
    "perimeter breach",
    "diversion",
    "sabotage of supply structure",
    "armed assault",
)


def _now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


@dataclass
class AssetContext:
    """Answers to the four framing questions. Empty strings mean unanswered."""

    asset_to_secure: str = ""
    threats_in_scope: str = ""
    loss_estimate: str = ""
    prevention_budget: str = ""

    def missing_fields(self) -> list[str]:
        return [name for name, _ in ASSET_QUESTIONS if not getattr(self, name).strip()]

    @property
    def complete(self) -> bool:
        return not self.missing_fields()


@dataclass(frozen=True)
class SourceRef:
    """A reference the analyst consulted for a tool, with the access date."""

    reference: str
    accessed: date

    @classmethod
    def today(cls, reference: str) -> "SourceRef":
        return cls(reference, datetime.now(timezone.utc).date())


@dataclass(frozen=True)
class ToolObservation:
    """One observed offensive tool. The id is a slug derived from the name."""

    id: str
    name: str
    category: str
    mode: DisruptionMode
    working_principles: str = ""
    known_vulnerabilities: str = ""
    sources: tuple[SourceRef, ...] = ()


@dataclass(frozen=True)
class VariableScore:
    """One scored variable: the chosen band, the integer score within it,
    and the analyst's reasoning. Raw is kept when the band was derived."""

    variable: Variable
    band: ScoreBand
    score: int
    motivation: str = ""
    notes: str = ""
    raw: RawMeasurement | None = None

    def __post_init__(self) -> None:
        if self.score not in (self.band.low_score, self.band.high_score):
            raise ScoreOutsideBand(
                f"score {self.score} is outside band "
                f"{self.band.low_score}-{self.band.high_score} for {self.variable.value}"
            )
        if not self.variable.quantitative and self.raw is not None:
            raise QualitativeVariable(
                f"{self.variable.value} is analyst-assigned and cannot carry a raw measurement"
            )

    @property
    def derived(self) -> bool:
        return self.raw is not None


@dataclass
class ToolAssessment:
    """The scores recorded so far for one tool, keyed by variable."""

    tool_id: str
    scores: dict[Variable, VariableScore] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return len(self.scores) == len(Variable)

    def missing_variables(self) -> list[Variable]:
        return [v for v in Variable if v not in self.scores]


@dataclass(frozen=True)
class MatrixRow:
    """One comparison-matrix line: the seven scores, their sum, and the level."""

    tool_id: str
    tool_name: str
    scores: tuple[int, int, int, int, int, int, int]  # R, I, Dmg, Dis, L, E, C
    score_total: int
    threat_level: ThreatLevel


@dataclass(frozen=True)
class ExcludedTool:
    """A tool left out of the matrix because its assessment is incomplete."""

    tool_id: str
    tool_name: str
    missing: tuple[Variable, ...]


@dataclass(frozen=True)
class MatrixResult:
    rows: tuple[MatrixRow, ...]
    excluded: tuple[ExcludedTool, ...]


@dataclass(frozen=True)
class SensitivityReport:
    """Within-band classification stability for one complete assessment."""

    tool_id: str
    min_total: int
    max_total: int
    levels_reachable: frozenset[ThreatLevel]
    boundary_crossed: bool


@dataclass(frozen=True)
class Finding:
    """A validation result; errors block nothing but demand attention."""

    severity: str  # "error" | "warning"
    code: str
    message: str
    subject: str = ""  # field name or tool id the finding points at


@dataclass
class Project:
    name: str
    context: AssetContext = field(default_factory=AssetContext)
    tools: list[ToolObservation] = field(default_factory=list)
    assessments: dict[str, ToolAssessment] = field(default_factory=dict)
    created_at: datetime = field(default_factory=_now)
    modified_at: datetime = field(default_factory=_now)

    def touch(self) -> None:
        self.modified_at = _now()

    def tool_ids(self) -> set[str]:
        return {t.id for t in self.tools}


def new_project(name: str) -> Project:
    name = name.strip()
    if not name:
        raise InvalidMeasurement("project name must not be empty")
    return Project(name=name)


def slugify(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.strip().lower()).strip("-")
    return slug or "tool"


def mode_for_category(category: str) -> DisruptionMode:
    normalized = category.strip().lower()
    if normalized in CYBER_CATEGORIES:
        return DisruptionMode.CYBER
    if normalized in KINETIC_CATEGORIES:
        return DisruptionMode.KINETIC
    valid = ", ".join(CYBER_CATEGORIES + KINETIC_CATEGORIES)
    raise UnknownCategory(f"unknown tool category {category!r}; valid categories: {valid}")


def set_asset_context(project: Project, context: AssetContext) -> Project:
    """Store the four answers; every answer must be non-empty.

    Re-answering overwrites the previous context and re-timestamps the
    project. Scoring stays locked until this has succeeded once.
    """
    for field_name, question in ASSET_QUESTIONS:
        if not getattr(context, field_name).strip():
            raise EmptyAnswer(field_name, question)
    project.context = AssetContext(
        asset_to_secure=context.asset_to_secure.strip(),
        threats_in_scope=context.threats_in_scope.strip(),
        loss_estimate=context.loss_estimate.strip(),
        prevention_budget=context.prevention_budget.strip(),
    )
    project.touch()
    return project


def add_tool(
    project: Project,
    name: str,
    category: str,
    working_principles: str = "",
    known_vulnerabilities: str = "",
    sources: tuple[SourceRef, ...] = (),
) -> ToolObservation:
    """Register a tool observation. The slug id and mode are derived here."""
    name = name.strip()
    if not name:
        raise InvalidMeasurement("tool name must not be empty")
    mode = mode_for_category(category)
    slug = slugify(name)
    for existing in project.tools:
        if existing.name.lower() == name.lower() or existing.id == slug:
            raise DuplicateTool(f"a tool named {existing.name!r} already exists (id {existing.id})")
    observation = ToolObservation(
        id=slug,
        name=name,
        category=category.strip().lower(),
        mode=mode,
        working_principles=working_principles.strip(),
        known_vulnerabilities=known_vulnerabilities.strip(),
        sources=tuple(sources),
    )
    project.tools.append(observation)
    project.assessments[slug] = ToolAssessment(tool_id=slug)
    project.touch()
    return observation


def find_tool(project: Project, key: str) -> ToolObservation:
    """Resolve a tool by slug id or exact (case-insensitive) name."""
    wanted = key.strip()
    for tool in project.tools:
        if tool.id == wanted or tool.name.lower() == wanted.lower():
            return tool
    raise UnknownTool(f"no tool {key!r} in project {project.name!r}")


def remove_tool(project: Project, key: str) -> ToolObservation:
    tool = find_tool(project, key)
    project.tools = [t for t in project.tools if t.id != tool.id]
    project.assessments.pop(tool.id, None)
    project.touch()
    return tool


def record_score(
    project: Project,
    tool: str,
    variable: Variable,
    band_index: int | None = None,
    raw: RawMeasurement | None = None,
    score: int | None = None,
    motivation: str = "",
    notes: str = "",
) -> ToolAssessment:
    """Record or replace one variable score on a tool's assessment.

    Quantitative variables may pass a raw measurement: the band is derived
    from the rubric boundaries (using the tool's cyber or kinetic mode) and
    the default score is the band's low score. Qualitative variables take a
    band index directly and must carry a motivation. An explicit score must
    sit inside the chosen band. Last write per variable wins.
    """
    missing = project.context.missing_fields()
    if missing:
        questions = dict(ASSET_QUESTIONS)
        raise EmptyAnswer(missing[0], questions[missing[0]])
    observation = find_tool(project, tool)
    rubric = rubric_for(variable)

    if raw is not None and band_index is not None:
        raise InvalidMeasurement("pass either a band index or a raw measurement, not both")
    if raw is not None:
        derived_band = derive_band(variable, raw, observation.mode)
    elif band_index is not None:
        derived_band = rubric.band(band_index)
    else:
        raise InvalidMeasurement(f"{variable.value} needs a band index or a raw measurement")

    if not variable.quantitative and not motivation.strip():
        raise QualitativeNeedsMotivation(
            f"{variable.value} is analyst-assigned and requires a motivation"
        )

    chosen = score if score is not None else derived_band.low_score
    entry = VariableScore(
        variable=variable,
        band=derived_band,
        score=chosen,
        motivation=motivation.strip(),
        notes=notes.strip(),
        raw=raw,
    )
    assessment = project.assessments.setdefault(
        observation.id, ToolAssessment(tool_id=observation.id)
    )
    assessment.scores[variable] = entry
    project.touch()
    return assessment


def total_score(assessment: ToolAssessment) -> int:
    """Sum of the seven integer scores; defined only for complete assessments."""
    missing = assessment.missing_variables()
    if missing:
        names = ", ".join(v.value for v in missing)
        raise IncompleteAssessment(
            f"assessment for {assessment.tool_id!r} is missing: {names}",
            missing=[v.value for v in missing],
        )
    return sum(entry.score for entry in assessment.scores.values())


def build_matrix(project: Project) -> MatrixResult:
    """Comparison matrix over complete assessments, most threatening first.

    Rows sort by total descending, ties broken by tool name ascending, so
    repeated runs on the same project are byte-identical. Incomplete
    assessments are reported rather than zero-filled: zero is not a score.
    """
    rows: list[MatrixRow] = []
    excluded: list[ExcludedTool] = []
    for tool in project.tools:
        assessment = project.assessments.get(tool.id, ToolAssessment(tool_id=tool.id))
        if not assessment.complete:
            excluded.append(
                ExcludedTool(tool.id, tool.name, tuple(assessment.missing_variables()))
            )
            continue
        total = total_score(assessment)
        rows.append(
            MatrixRow(
                tool_id=tool.id,
                tool_name=tool.name,
                scores=tuple(assessment.scores[v].score for v in Variable),
                score_total=total,
                threat_level=classify_total(total),
            )
        )
    if not rows:
        raise NoCompleteAssessments(
            f"project {project.name!r} has no complete assessments to compare"
        )
    rows.sort(key=lambda r: (-r.score_total, r.tool_name))
    return MatrixResult(rows=tuple(rows), excluded=tuple(excluded))


def sensitivity_within_band(assessment: ToolAssessment) -> SensitivityReport:
    """Explore every low/high choice per variable (2^7 combinations).

    Each recorded band admits two scores; this enumerates all 128 total
    sums and classifies each, showing whether analyst leeway inside the
    chosen bands can move the tool across a threat-level boundary.
    """
    missing = assessment.missing_variables()
    if missing:
        names = ", ".join(v.value for v in missing)
        raise IncompleteAssessment(
            f"assessment for {assessment.tool_id!r} is missing: {names}",
            missing=[v.value for v in missing],
        )
    pairs = [assessment.scores[v].band.score_pair for v in Variable]
    totals = [sum(combo) for combo in itertools.product(*pairs)]
    levels = frozenset(classify_total(t) for t in totals)
    return SensitivityReport(
        tool_id=assessment.tool_id,
        min_total=min(totals),
        max_total=max(totals),
        levels_reachable=levels,
        boundary_crossed=len(levels) > 1,
    )


def validate_project(project: Project) -> list[Finding]:
    """Collect everything an analyst should fix before trusting the matrix."""
    findings: list[Finding] = []
    questions = dict(ASSET_QUESTIONS)
    for field_name in project.context.missing_fields():
        findings.append(
            Finding(
                severity="error",
                code="unanswered_question",
                message=f"unanswered question: {questions[field_name]}",
                subject=field_name,
            )
        )
    for tool in project.tools:
        if not tool.sources:
            findings.append(
                Finding(
                    severity="warning",
                    code="no_sources",
                    message=f"tool {tool.name!r} cites no sources",
                    subject=tool.id,
                )
            )
        assessment = project.assessments.get(tool.id)
        missing = assessment.missing_variables() if assessment else list(Variable)
        if missing:
            names = ", ".join(v.value for v in missing)
            findings.append(
                Finding(
                    severity="warning",
                    code="incomplete_assessment",
                    message=f"tool {tool.name!r} is missing scores for: {names}",
                    subject=tool.id,
                )
            )
        if assessment:
            for variable, entry in assessment.scores.items():
                if not variable.quantitative and not entry.motivation.strip():
                    findings.append(
                        Finding(
                            severity="error",
                            code="empty_motivation",
                            message=(
                                f"tool {tool.name!r} has no motivation for "
                                f"analyst-assigned variable {variable.value}"
                            ),
                            subject=f"{tool.id}:{variable.short}",
                        )
                    )
    return findings
