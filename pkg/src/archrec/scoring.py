"""Confidence scoring of catalog patterns against a requirements spec.

Aggregates use-case fields into importance-weighted tuple sets, entails
each aggregated field against the mapped pattern feature, and sums the
term values per pattern.  Every run records a per-term trace so rankings
stay explainable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .catalog import PatternCatalog, PatternRecord
from .entailment import EntailmentConfig, text_entail
from .errors import ArchrecError
from .inputs import RequirementsSpec, UseCase

# Requirement field -> pattern feature, one entry per scoreable field.
# The flow term is part of the mapping but only enters totals when the
# include_flow_term flag is on (see score_patterns).
FIELD_FEATURE_MAPPING = (
    ("detailed_description", "basic_definition"),
    ("short_description", "known_applications"),
    ("nfrs", "forces"),
    ("objective", "forces"),
    ("actors", "solution"),
    ("constraints", "forces"),
    ("pre_conditions", "context"),
    ("post_conditions", "consequences"),
    ("normal_flow", "solution"),
)

TERM_IDS = (
    "dd_bd",
    "sd_ka",
    "nfr_forces",
    "obj_forces",
    "act_solution",
    "cst_forces",
    "precon_context",
    "postcon_consequences",
    "flo_solution",
)


@dataclass(frozen=True)
class WeightedText:
    """One aggregated use-case field value with its importance weight."""

    text: str
    importance: float


@dataclass(frozen=True)
class AggregatedFields:
    all_obj: tuple[WeightedText, ...]
    all_act: tuple[WeightedText, ...]
    all_cst: tuple[WeightedText, ...]
    all_precon: tuple[WeightedText, ...]
    all_postcon: tuple[WeightedText, ...]
    all_flo: tuple[WeightedText, ...]


def aggregate_fields(use_cases: Sequence[UseCase]) -> AggregatedFields:
    """Union each use case's field texts with its importance score.

    Iteration order is fixed by sorting on use-case id, exact duplicate
    (text, importance) tuples are kept once, and empty field texts are
    skipped entirely.
    """
    buckets: dict[str, list[WeightedText]] = {
        "objective": [],
        "actors": [],
        "constraints": [],
        "pre_conditions": [],
        "post_conditions": [],
        "normal_flow": [],
    }
    seen: dict[str, set[tuple[str, float]]] = {k: set() for k in buckets}
    for uc in sorted(use_cases, key=lambda u: u.id):
        weight = uc.importance_score if uc.importance_score is not None else 1.0
        for fld, bucket in buckets.items():
            value = getattr(uc, fld)
            if not value.strip():
                continue
            key = (value, weight)
            if key in seen[fld]:
                continue
            seen[fld].add(key)
            bucket.append(WeightedText(text=value, importance=weight))
    return AggregatedFields(
        all_obj=tuple(buckets["objective"]),
        all_act=tuple(buckets["actors"]),
        all_cst=tuple(buckets["constraints"]),
        all_precon=tuple(buckets["pre_conditions"]),
        all_postcon=tuple(buckets["post_conditions"]),
        all_flo=tuple(buckets["normal_flow"]),
    )


def recog_entail(
    tuples: Iterable[WeightedText], pattern_attr: str, config: EntailmentConfig
) -> float:
    """Importance-weighted entailment sum of a tuple set against a feature."""
    total = 0.0
    for t in tuples:
        total += text_entail(t.text, pattern_attr, config) * t.importance
    return total


@dataclass(frozen=True)
class TermScore:
    term: str
    source: str
    target: str
    value: float
    active: bool


@dataclass(frozen=True)
class PatternTrace:
    pattern_name: str
    terms: tuple[TermScore, ...]
    total: float

    def term(self, term_id: str) -> TermScore:
        for t in self.terms:
            if t.term == term_id:
                return t
        raise KeyError(term_id)

    def to_dict(self) -> dict:
        return {
            "pattern_name": self.pattern_name,
            "total": self.total,
            "terms": [
                {
                    "term": t.term,
                    "source": t.source,
                    "target": t.target,
                    "value": t.value,
                    "active": t.active,
                }
                for t in self.terms
            ],
        }


@dataclass(frozen=True)
class ConfidenceTable:
    """Per-pattern confidence plus the trace that produced it."""

    confidences: dict[str, float]
    traces: dict[str, PatternTrace]

    def items(self):
        return sorted(self.confidences.items())

    def __getitem__(self, name: str) -> float:
        return self.confidences[name]

    def __len__(self) -> int:
        return len(self.confidences)


def _score_record(
    spec: RequirementsSpec,
    agg: AggregatedFields,
    record: PatternRecord,
    config: EntailmentConfig,
    include_flow_term: bool,
    importance_divisor: float | None,
) -> PatternTrace:
    def scaled(value: float) -> float:
        return value / importance_divisor if importance_divisor else value

    nfr_value = 0.0
    for item in spec.nfrs:
        nfr_value += text_entail(item.entail_text(), record.forces, config)

    terms = [
        TermScore(
            "dd_bd",
            "detailed_description",
            "basic_definition",
            text_entail(spec.detailed_description, record.basic_definition, config),
            True,
        ),
        TermScore(
            "sd_ka",
            "short_description",
            "known_applications",
            text_entail(spec.short_description, record.known_applications, config),
            True,
        ),
        TermScore("nfr_forces", "nfrs", "forces", nfr_value, True),
        TermScore(
            "obj_forces",
            "objective",
            "forces",
            scaled(recog_entail(agg.all_obj, record.forces, config)),
            True,
        ),
        TermScore(
            "act_solution",
            "actors",
            "solution",
            scaled(recog_entail(agg.all_act, record.solution, config)),
            True,
        ),
        TermScore(
            "cst_forces",
            "constraints",
            "forces",
            scaled(recog_entail(agg.all_cst, record.forces, config)),
            True,
        ),
        TermScore(
            "precon_context",
            "pre_conditions",
            "context",
            scaled(recog_entail(agg.all_precon, record.context, config)),
            True,
        ),
        TermScore(
            "postcon_consequences",
            "post_conditions",
            "consequences",
            scaled(recog_entail(agg.all_postcon, record.consequences, config)),
            True,
        ),
        TermScore(
            "flo_solution",
            "normal_flow",
            "solution",
            scaled(recog_entail(agg.all_flo, record.solution, config)),
            include_flow_term,
        ),
    ]
    total = 0.0
    for t in terms:
        if t.active:
            total += t.value
    return PatternTrace(pattern_name=record.pattern_name, terms=tuple(terms), total=total)


def score_patterns(
    spec: RequirementsSpec,
    agg: AggregatedFields,
    catalog: PatternCatalog,
    config: EntailmentConfig | None = None,
    *,
    include_flow_term: bool = False,
    normalize_by_importance_mass: bool = False,
) -> ConfidenceTable:
    """Confidence per catalog pattern: the summed entailment terms.

    The eight default terms follow the field/feature mapping; the flow
    term is always traced but only counted when include_flow_term is set.
    normalize_by_importance_mass divides each aggregated-field term by the
    total importance mass for cross-spec comparability.
    """
    if len(catalog) == 0:
        raise ArchrecError("cannot score against an empty catalog")
    cfg = config if config is not None else EntailmentConfig()

    divisor = None
    if normalize_by_importance_mass:
        mass = sum(
            uc.importance_score if uc.importance_score is not None else 1.0
            for uc in spec.use_cases
        )
        divisor = mass if mass > 0 else None

    confidences: dict[str, float] = {}
    traces: dict[str, PatternTrace] = {}
    for record in catalog:
        trace = _score_record(spec, agg, record, cfg, include_flow_term, divisor)
        confidences[record.pattern_name] = trace.total
        traces[record.pattern_name] = trace
    return ConfidenceTable(confidences=confidences, traces=traces)


def rank_top3(table: ConfidenceTable) -> list[tuple[str, float]]:
    """Top three patterns by confidence; ties break alphabetically."""
    if len(table) == 0:
        raise ArchrecError("cannot rank an empty confidence table")
    ordered = sorted(table.confidences.items(), key=lambda kv: (-kv[1], kv[0]))
    return ordered[: min(3, len(ordered))]
