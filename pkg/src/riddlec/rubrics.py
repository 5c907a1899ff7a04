"""Scoring rubrics for the seven assessment variables.

This module is the single source of truth for rubric band text, score
pairs, resolved raw-value boundaries, and threat-level classification.
Everything is pure data plus pure functions: no shared mutable state, so
any number of callers may use it concurrently.

Scale conventions baked into the tables:

* Each variable has five bands scored (9-10), (7-8), (5-6), (3-4), (1-2),
  with band index 1 the most severe.
* Resistance and Latency are qualitative: the analyst selects a band
  directly. The other five derive their band from a raw measurement
  (durations in seconds, percentages, euro amounts).
* Cost runs on a reversed scale: the cheaper the tool, the higher the
  score, because a cheap tool is a low barrier for a hostile actor.
* Disruption timing uses a compressed boundary table for cyber tools
  (one hour up to one week instead of one day up to six months).

Where the published ranges leave gaps on the raw axis (for example
intrusion timings between 10 and 20 seconds) the gap is closed at the
log-space midpoint of the neighbouring stated boundaries, which is the
natural midpoint for duration- and money-like quantities. Where two
bands name the same boundary value, the value belongs to the more severe
band, which is the conservative reading for defence. The constants below
are derived from those rules, never hand-tuned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    InvalidMeasurement,
    OutOfBand,
    OutOfRange,
    QualitativeVariable,
    UnitMismatch,
)

SECOND = 1.0
MINUTE = 60.0
HOUR = 3600.0
DAY = 86400.0
WEEK = 7 * DAY
MONTH = 30 * DAY  # calendar months vary; a fixed 30-day month keeps the tables deterministic


class Variable(Enum):
    """The seven scored dimensions, in fixed acronym order."""

    RESISTANCE = "Resistance"
    INTRUSION_TIMING = "IntrusionTiming"
    DAMAGE = "Damage"
    DISRUPTION_TIMING = "DisruptionTiming"
    LATENCY = "Latency"
    EFFICIENCY = "Efficiency"
    COST = "Cost"

    @property
    def short(self) -> str:
        return _SHORT_NAMES[self]

    @property
    def quantitative(self) -> bool:
        return self not in (Variable.RESISTANCE, Variable.LATENCY)

    @classmethod
    def parse(cls, text: str) -> "Variable":
        """Accept the long name or the short column name, case-insensitively."""
        wanted = text.strip().lower()
        for member in cls:
            if wanted in (member.value.lower(), member.short.lower()):
                return member
        valid = ", ".join(f"{m.short} ({m.value})" for m in cls)
        raise InvalidMeasurement(f"unknown variable {text!r}; expected one of: {valid}")


_SHORT_NAMES = {
    Variable.RESISTANCE: "R",
    Variable.INTRUSION_TIMING: "I",
    Variable.DAMAGE: "Dmg",
    Variable.DISRUPTION_TIMING: "Dis",
    Variable.LATENCY: "L",
    Variable.EFFICIENCY: "E",
    Variable.COST: "C",
}


class DisruptionMode(Enum):
    """Whether a tool is kinetic or cyber; only disruption timing boundaries differ."""

    KINETIC = "kinetic"
    CYBER = "cyber"


class MeasurementKind(Enum):
    DURATION = "duration"  # seconds
    PERCENTAGE = "percentage"  # 0..100
    EURO = "euro"  # non-negative amount
    QUALITATIVE = "qualitative"  # band index 1..5


@dataclass(frozen=True)
class RawMeasurement:
    """A typed raw input from which a score band can be derived."""

    kind: MeasurementKind
    value: float

    def __post_init__(self) -> None:
        if self.kind is MeasurementKind.PERCENTAGE:
            if not 0.0 <= self.value <= 100.0:
                raise InvalidMeasurement(f"percentage must be within 0..100, got {self.value}")
        elif self.kind is MeasurementKind.QUALITATIVE:
            if self.value not in (1, 2, 3, 4, 5):
                raise InvalidMeasurement(f"qualitative band index must be 1..5, got {self.value}")
        elif self.value < 0:
            raise InvalidMeasurement(f"{self.kind.value} must be non-negative, got {self.value}")

    @classmethod
    def duration(cls, seconds: float) -> "RawMeasurement":
        return cls(MeasurementKind.DURATION, float(seconds))

    @classmethod
    def percentage(cls, value: float) -> "RawMeasurement":
        return cls(MeasurementKind.PERCENTAGE, float(value))

    @classmethod
    def euros(cls, amount: float) -> "RawMeasurement":
        return cls(MeasurementKind.EURO, float(amount))

    @classmethod
    def qualitative(cls, band_index: int) -> "RawMeasurement":
        return cls(MeasurementKind.QUALITATIVE, float(band_index))


# Raw unit expected per quantitative variable.
QUANTITATIVE_UNITS = {
    Variable.INTRUSION_TIMING: MeasurementKind.DURATION,
    Variable.DAMAGE: MeasurementKind.PERCENTAGE,
    Variable.DISRUPTION_TIMING: MeasurementKind.DURATION,
    Variable.EFFICIENCY: MeasurementKind.PERCENTAGE,
    Variable.COST: MeasurementKind.EURO,
}

# Variables where a larger raw value means a more severe band. Intrusion
# timing and cost run the other way (fast or cheap tools are the threat).
_SEVERITY_INCREASES_WITH_RAW = {
    Variable.DAMAGE: True,
    Variable.EFFICIENCY: True,
    Variable.DISRUPTION_TIMING: True,
    Variable.INTRUSION_TIMING: False,
    Variable.COST: False,
}


@dataclass(frozen=True)
class ScoreBand:
    """One of the five ordered bands of a rubric. Index 1 is most severe."""

    band_index: int
    low_score: int
    high_score: int
    description: str

    @property
    def score_pair(self) -> tuple[int, int]:
        return (self.low_score, self.high_score)


@dataclass(frozen=True)
class RawBoundary:
    """Resolved raw-axis interval owned by one band. Upper of None means unbounded."""

    band_index: int
    lower: float
    lower_inclusive: bool
    upper: float | None
    upper_inclusive: bool

    def contains(self, value: float) -> bool:
        if self.lower_inclusive:
            if value < self.lower:
                return False
        elif value <= self.lower:
            return False
        if self.upper is None:
            return True
        if self.upper_inclusive:
            return value <= self.upper
        return value < self.upper


@dataclass(frozen=True)
class Rubric:
    """A variable's full band table plus, when quantitative, its resolved boundaries."""

    variable: Variable
    definition: str
    bands: tuple[ScoreBand, ...]
    boundary_spec: tuple[RawBoundary, ...] | None = None
    cyber_boundary_spec: tuple[RawBoundary, ...] | None = None
    reversed_scale: bool = False

    @property
    def quantitative(self) -> bool:
        return self.boundary_spec is not None

    def band(self, band_index: int) -> ScoreBand:
        for b in self.bands:
            if b.band_index == band_index:
                return b
        raise InvalidMeasurement(f"band index must be 1..5, got {band_index}")

    def boundaries(self, mode: DisruptionMode = DisruptionMode.KINETIC) -> tuple[RawBoundary, ...]:
        if self.variable is Variable.DISRUPTION_TIMING and mode is DisruptionMode.CYBER:
            assert self.cyber_boundary_spec is not None
            return self.cyber_boundary_spec
        if self.boundary_spec is None:
            raise QualitativeVariable(f"{self.variable.value} has no raw-value boundaries")
        return self.boundary_spec


# (band_index, low_score, high_score) for every rubric.
SCORE_PAIRS = ((1, 9, 10), (2, 7, 8), (3, 5, 6), (4, 3, 4), (5, 1, 2))


def _bands(variable: Variable) -> tuple[ScoreBand, ...]:
    texts = _BAND_TEXT[variable]
    return tuple(
        ScoreBand(idx, low, high, texts[idx - 1]) for idx, low, high in SCORE_PAIRS
    )


_BAND_TEXT: dict[Variable, tuple[str, str, str, str, str]] = {
    Variable.RESISTANCE: (
        "Extreme resistance. The offensive tool can withstand attempts to stop or "
        "destroy it. It is almost impossible to interrupt its action or, even if "
        "blocked, due to its heavy resistance it can still produce the effects it "
        "was conceived for.",
        "High resistance. The offensive tool resists attempt to stop or destroy it, "
        "but the produced effects are smaller than when the attack started.",
        "Medium resilience. The instrument has an average resistance and is able to "
        "accomplish the attack; its effects are mediocre, but still of concern.",
        "Low resistance. The offensive tool has a low resistance, after several "
        "attempts to block it or destroy it, its action is arrested and it can't "
        "accomplish the action for which it was conceived or it can be of low "
        "relevance.",
        "None resistance. The offensive tool is not resistance and, since the first "
        "attempt to stop it or destroy it, does not retain the capabilities it had "
        "been designed for.",
    ),
    Variable.INTRUSION_TIMING: (
        "Immediate intrusion time. The instrument can access the System or the "
        "Infrastructure instantaneously, the time segment is between 1 second and "
        "10 seconds.",
        "Short intrusion time. The instrument is able to enter the System or "
        "Infrastructure after a short time, the time segment is within 20 seconds "
        "and 1 minute.",
        "Medium intrusion time. The instrument can enter the System or "
        "Infrastructure over an average length of time, the time range is between "
        "1 and 12 hours.",
        "Long intrusion time. The instrument manages to penetrate the System after "
        "a long period, the time range is between 1 day and 1 week.",
        "Very long intrusion time. The instrument manages to penetrate the System "
        "after a very long period, the intrusion time range is longer than one "
        "week.",
    ),
    Variable.DAMAGE: (
        "Severe damage. The tool can produce very serious damages. The resulting "
        "effects affect the physical infrastructure, the network or the "
        "organization to the extent of 90 to 100%. Such damages are either "
        "irreparable or difficult to remedy.",
        "High damage. The tool can produce serious damage. The resulting effects "
        "affect the physical infrastructure, the network or the organization to "
        "the extent of 70 to 90%. Such damages are repairable in the long-term.",
        "Medium damage. The tool can produce contained damage. The resulting "
        "effects affect the physical infrastructure, the network or the "
        "organization to the extent of 40 to 70 %. Such damages are repairable in "
        "the medium-term.",
        "Low damage. The tool can produce lowered damage. The resulting effects "
        "affect the physical infrastructure, the network or the organization to "
        "the extent of 10 to 40 %. Such damages are repairable in the short-term.",
        "Minimum damage. The tool can produce damage. The resulting effects affect "
        "the physical infrastructure, the network or the organization to the "
        "extent of 1 to 10 %. These damages can be immediately repaired.",
    ),
    Variable.DISRUPTION_TIMING: (
        "Very long disruption. The effects of the instrument's action consist in "
        "interrupting the service for more than six months.",
        "Long disruption. The effects of the instrument's action consist in "
        "interrupting the service for a time period between six and three months.",
        "Medium disruption. The effects of the instrument's action consist in "
        "interrupting the service for a time period between three months and one "
        "week.",
        "Short disruption. The effects of the instrument's action consist in "
        "interrupting the service for a time period ≤ than one week.",
        "Minimum disruption. The effects of the instrument's action consist in "
        "interrupting the service for a time period ≤ than one day.",
    ),
    Variable.LATENCY: (
        "Very Long latency. The instrument is hardly identifiable or intercepted "
        "and therefore it is difficult to quantify the latency period and "
        "propagation of its effects.",
        "Long latency. The tool is able to endure in the system and multiply its "
        "effects for a long time before revealing itself.",
        "Medium latency. The tool is able to endure in the system and multiply its "
        "effects for a discrete time before revealing itself.",
        "Short latency. The tool is able to endure in the system and multiply its "
        "effects for a short time before revealing itself.",
        "Very Short latency. The tool is able to endure in the system and multiply "
        "its effects for a very short time before revealing itself.",
    ),
    Variable.EFFICIENCY: (
        "Highly efficient. The instrument is highly efficient and can produce the "
        "effect it has been conceived for in 100% of cases.",
        "Discreetly efficient. The instrument is highly efficient and can produce "
        "the effect it has been conceived for in 80% of cases.",
        "Mediumly efficient. The instrument is highly efficient and can produce "
        "the effect it has been conceived for in 60% of cases.",
        "Lowly efficient. The instrument is highly efficient and can produce the "
        "effect it has been conceived for in 30% of cases.",
        "Not efficient. The instrument is highly efficient and can produce the "
        "effect it has been conceived for in 10% of cases.",
    ),
    Variable.COST: (
        "Minimum cost. Costs for the purchase or production of the instrument are "
        "less than or equal to € 1000.",
        "Low cost. Costs for the purchase or production of the instrument are "
        "equal to or greater than € 1000.",
        "Medium cost. Costs for the purchase or production of the instrument are "
        "equal to or greater than € 10000.",
        "High-cost. Costs for the purchase or production of the instrument are "
        "equal to or greater than € 100000.",
        "Very high-cost. Costs for the purchase or production of the instrument "
        "are equal to or greater than € 1000000.",
    ),
}

_DEFINITIONS: dict[Variable, str] = {
    Variable.RESISTANCE: (
        "The ability of an offensive tool to withstand all the attempts taken and "
        "the forces applied by the target to obstruct, block or prevent the attack."
    ),
    Variable.INTRUSION_TIMING: (
        "Intrusion timing represents the time measurement that the tool employs "
        "and needs to finalize the attack and reach the target."
    ),
    Variable.DAMAGE: (
        "Damages represent the short, medium, and long-term impact on the asset "
        "vulnerability consequences of the attack on the target."
    ),
    Variable.DISRUPTION_TIMING: (
        "It measures the duration of the suspension or cease of the service caused "
        "by the offensive tool, which causes problems with its availability and "
        "its functionality."
    ),
    Variable.LATENCY: (
        "Latency means the time segment between the time of intrusion of an "
        "offensive tool within the system and the time when that tool is "
        "identified by the system security elements and the propagation or "
        "duplication of the effects of its use within the system. Specifically, "
        "this feature expresses the stealth mode of the instrument."
    ),
    Variable.EFFICIENCY: (
        "The efficiency of an instrument represents its ability to perform the "
        "actions it was designed and conceived for, the greater the ability to "
        "succeed, the greater its effects."
    ),
    Variable.COST: (
        "It represents the expense you need to sustain to produce or buy a certain "
        "tool. The specific cost is parameterized on a reversed value scale as a "
        "high-cost tool can be a barrier to a hostile actor, but a low-cost tool "
        "is an incentive to acquire that type of tool."
    ),
}


def _segments(spec: list[tuple[int, float, bool, float | None, bool]]) -> tuple[RawBoundary, ...]:
    return tuple(RawBoundary(*row) for row in spec)


def _log_mid(a: float, b: float) -> float:
    return math.sqrt(a * b)


# Intrusion timing: the stated ranges (1-10 s, 20 s-1 min, 1-12 h, 1 d-1 w,
# >1 w) leave 10-20 s, 1 min-1 h and 12-24 h unassigned; each gap is split
# at the log-space midpoint of its endpoints.
_INTRUSION_BOUNDS = _segments([
    (1, 0.0, True, _log_mid(10 * SECOND, 20 * SECOND), False),
    (2, _log_mid(10 * SECOND, 20 * SECOND), True, _log_mid(MINUTE, HOUR), False),
    (3, _log_mid(MINUTE, HOUR), True, _log_mid(12 * HOUR, DAY), False),
    (4, _log_mid(12 * HOUR, DAY), True, WEEK, True),
    (5, WEEK, False, None, False),
])

# Damage: shared boundary percentages (10, 40, 70, 90) belong to the more
# severe band; anything under the stated 1% floor stays in the lowest band.
_DAMAGE_BOUNDS = _segments([
    (5, 0.0, True, 10.0, False),
    (4, 10.0, True, 40.0, False),
    (3, 40.0, True, 70.0, False),
    (2, 70.0, True, 90.0, False),
    (1, 90.0, True, 100.0, True),
])

# Efficiency: the table anchors single percentages (100/80/60/30/10);
# thresholds sit at the arithmetic midpoints, ties go to the higher band.
_EFFICIENCY_BOUNDS = _segments([
    (5, 0.0, True, 20.0, False),
    (4, 20.0, True, 45.0, False),
    (3, 45.0, True, 70.0, False),
    (2, 70.0, True, 90.0, False),
    (1, 90.0, True, 100.0, True),
])

# Cost decades, half-open upward; the ambiguous 1000 boundary goes to the
# low-cost band (7-8), reading the higher cost as the higher attacker barrier.
_COST_BOUNDS = _segments([
    (1, 0.0, True, 1_000.0, False),
    (2, 1_000.0, True, 10_000.0, False),
    (3, 10_000.0, True, 100_000.0, False),
    (4, 100_000.0, True, 1_000_000.0, False),
    (5, 1_000_000.0, True, None, False),
])

# Disruption timing, kinetic scale. The overlapping "up to one week" and
# "up to one day" rows split at one day (day boundary staying in the lower
# band); three months belongs to the more severe 7-8 band; "more than six
# months" keeps six months itself in 7-8.
_DISRUPTION_BOUNDS = _segments([
    (5, 0.0, True, DAY, True),
    (4, DAY, False, WEEK, True),
    (3, WEEK, False, 3 * MONTH, False),
    (2, 3 * MONTH, True, 6 * MONTH, True),
    (1, 6 * MONTH, False, None, False),
])

# Cyber tools compress the disruption scale to the one-hour-to-one-week span.
_DISRUPTION_BOUNDS_CYBER = _segments([
    (5, 0.0, True, HOUR, True),
    (4, HOUR, False, DAY, True),
    (3, DAY, False, 3 * DAY, True),
    (2, 3 * DAY, False, WEEK, True),
    (1, WEEK, False, None, False),
])


_RUBRICS: dict[Variable, Rubric] = {
    Variable.RESISTANCE: Rubric(
        Variable.RESISTANCE, _DEFINITIONS[Variable.RESISTANCE], _bands(Variable.RESISTANCE)
    ),
    Variable.INTRUSION_TIMING: Rubric(
        Variable.INTRUSION_TIMING,
        _DEFINITIONS[Variable.INTRUSION_TIMING],
        _bands(Variable.INTRUSION_TIMING),
        boundary_spec=_INTRUSION_BOUNDS,
    ),
    Variable.DAMAGE: Rubric(
        Variable.DAMAGE,
        _DEFINITIONS[Variable.DAMAGE],
        _bands(Variable.DAMAGE),
        boundary_spec=_DAMAGE_BOUNDS,
    ),
    Variable.DISRUPTION_TIMING: Rubric(
        Variable.DISRUPTION_TIMING,
        _DEFINITIONS[Variable.DISRUPTION_TIMING],
        _bands(Variable.DISRUPTION_TIMING),
        boundary_spec=_DISRUPTION_BOUNDS,
        cyber_boundary_spec=_DISRUPTION_BOUNDS_CYBER,
    ),
    Variable.LATENCY: Rubric(
        Variable.LATENCY, _DEFINITIONS[Variable.LATENCY], _bands(Variable.LATENCY)
    ),
    Variable.EFFICIENCY: Rubric(
        Variable.EFFICIENCY,
        _DEFINITIONS[Variable.EFFICIENCY],
        _bands(Variable.EFFICIENCY),
        boundary_spec=_EFFICIENCY_BOUNDS,
    ),
    Variable.COST: Rubric(
        Variable.COST,
        _DEFINITIONS[Variable.COST],
        _bands(Variable.COST),
        boundary_spec=_COST_BOUNDS,
        reversed_scale=True,
    ),
}


def builtin_rubrics() -> list[Rubric]:
    """The seven rubrics in acronym order. Pure; identical on every call."""
    return [_RUBRICS[v] for v in Variable]


def rubric_for(variable: Variable) -> Rubric:
    return _RUBRICS[variable]


def derive_band(
    variable: Variable,
    raw: RawMeasurement,
    mode: DisruptionMode = DisruptionMode.KINETIC,
) -> ScoreBand:
    """Map a raw measurement onto exactly one score band.

    Total over the raw axis of the variable: every valid measurement lands
    in one band. The mode is only consulted for disruption timing.
    """
    rubric = _RUBRICS[variable]
    if not rubric.quantitative:
        raise QualitativeVariable(
            f"{variable.value} is scored by analyst judgement; select a band directly"
        )
    expected = QUANTITATIVE_UNITS[variable]
    if raw.kind is not expected:
        raise UnitMismatch(
            f"{variable.value} expects a {expected.value} measurement, got {raw.kind.value}"
        )
    for segment in rubric.boundaries(mode):
        if segment.contains(raw.value):
            return rubric.band(segment.band_index)
    raise AssertionError(f"boundary tables leave {raw.value} unassigned")  # pragma: no cover


def refine_score(
    band: ScoreBand,
    raw: RawMeasurement | None,
    rubric: Rubric,
    mode: DisruptionMode = DisruptionMode.KINETIC,
) -> int:
    """Pick one of the band's two scores.

    Without a raw measurement this returns the band's low score, the
    conservative default (analyst overrides happen upstream). With one, it
    returns the high score when the measurement sits in the more severe
    half of the band's raw interval: split at the log-space midpoint for
    durations and euro amounts, the arithmetic midpoint for percentages,
    with ties going to the high score. Bands whose interval is unbounded
    have no midpoint and keep the conservative default.
    """
    if raw is None:
        return band.low_score
    if not rubric.quantitative:
        raise QualitativeVariable(
            f"{rubric.variable.value} has no raw interval to refine against"
        )
    expected = QUANTITATIVE_UNITS[rubric.variable]
    if raw.kind is not expected:
        raise UnitMismatch(
            f"{rubric.variable.value} expects a {expected.value} measurement, got {raw.kind.value}"
        )
    segment = next(
        s for s in rubric.boundaries(mode) if s.band_index == band.band_index
    )
    if not segment.contains(raw.value):
        raise OutOfBand(
            f"{raw.value} lies outside the raw interval of band "
            f"{band.low_score}-{band.high_score} for {rubric.variable.value}"
        )
    if segment.upper is None:
        return band.low_score
    if expected is MeasurementKind.PERCENTAGE or segment.lower == 0.0:
        midpoint = (segment.lower + segment.upper) / 2.0
    else:
        midpoint = _log_mid(segment.lower, segment.upper)
    if _SEVERITY_INCREASES_WITH_RAW[rubric.variable]:
        severe = raw.value >= midpoint
    else:
        severe = raw.value <= midpoint
    return band.high_score if severe else band.low_score


class ThreatLevel(Enum):
    """Classification of a tool's summed score."""

    MINOR = "Minor"
    MEDIUM = "Medium"
    SEVERE = "Severe"

    @property
    def description(self) -> str:
        return _THREAT_TEXT[self]


_THREAT_TEXT = {
    ThreatLevel.SEVERE: (
        "The severe threat level represents a tool that is capable of causing "
        "serious or irreversible damage to infrastructures, so in presence of such "
        "high score, it is mandatory to pay close attention and to put in place "
        "all the necessary activities to reduce the risk related to the tool "
        "potential activity."
    ),
    ThreatLevel.MEDIUM: (
        "The medium threat level represents a tool that is capable of causing "
        "medium and repairable damages to infrastructures, so in presence of such "
        "score, it is necessary to pay a discrete prudence but it is still "
        "necessary to reduce the risk related to the tool potential activity."
    ),
    ThreatLevel.MINOR: (
        "The minor threat level represents a tool that is capable of causing "
        "minor or soft and easily repairable damages to infrastructures, so in "
        "presence of such low score, it is still necessary to put in place "
        "prevention activity to decrease the risk related to the tool potential "
        "activity."
    ),
}

# (level, low, high, high_inclusive): half-open upward, so a total sitting
# exactly on 25 or 50 classifies into the higher level (conservative).
THREAT_INTERVALS: tuple[tuple[ThreatLevel, int, int, bool], ...] = (
    (ThreatLevel.MINOR, 0, 25, False),
    (ThreatLevel.MEDIUM, 25, 50, False),
    (ThreatLevel.SEVERE, 50, 70, True),
)


def classify_total(total: int) -> ThreatLevel:
    """Classify a summed score into Minor / Medium / Severe."""
    if isinstance(total, bool) or not isinstance(total, int):
        raise OutOfRange(f"total must be an integer, got {total!r}")
    if not 0 <= total <= 70:
        raise OutOfRange(f"total must be within 0..70, got {total}")
    for level, low, high, high_inclusive in THREAT_INTERVALS:
        if low <= total < high or (high_inclusive and total == high):
            return level
    raise AssertionError("threat intervals do not cover 0..70")  # pragma: no cover


def rubric_tables() -> dict:
    """The full rubric data as a JSON-ready document.

    This is the export behind the HTTP rubric endpoint and the only place
    band text leaves this module, so every consumer renders identical text.
    """
    variables = []
    for rubric in builtin_rubrics():
        entry: dict = {
            "name": rubric.variable.value,
            "short": rubric.variable.short,
            "definition": rubric.definition,
            "quantitative": rubric.quantitative,
            "reversed": rubric.reversed_scale,
            "unit": (
                QUANTITATIVE_UNITS[rubric.variable].value if rubric.quantitative else None
            ),
            "bands": [
                {
                    "band_index": b.band_index,
                    "low_score": b.low_score,
                    "high_score": b.high_score,
                    "description": b.description,
                }
                for b in rubric.bands
            ],
            "boundaries": _boundary_json(rubric.boundary_spec),
            "cyber_boundaries": _boundary_json(rubric.cyber_boundary_spec),
        }
        variables.append(entry)
    levels = [
        {
            "level": level.value,
            "low": low,
            "high": high,
            "high_inclusive": inclusive,
            "description": level.description,
        }
        for level, low, high, inclusive in reversed(THREAT_INTERVALS)
    ]
    return {"version": 1, "variables": variables, "threat_levels": levels}


def _boundary_json(spec: tuple[RawBoundary, ...] | None) -> list[dict] | None:
    if spec is None:
        return None
    return [
        {
            "band_index": s.band_index,
            "lower": s.lower,
            "lower_inclusive": s.lower_inclusive,
            "upper": s.upper,
            "upper_inclusive": s.upper_inclusive,
        }
        for s in spec
    ]
