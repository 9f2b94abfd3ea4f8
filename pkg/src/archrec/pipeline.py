"""End-to-end composition: validate, score, rank, annotate with sentiment.

Also hosts the evaluation harness that replays ground-truth cases and
tallies at which rank the expected pattern shows up.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .catalog import PatternCatalog
from .config import PipelineConfig
from .errors import ResolutionRequiredError, SpecValidationError
from .inputs import (
    ConflictMatrix,
    RequirementsSpec,
    Taxonomy,
    check_nfr_conflicts,
    load_builtin_conflict_matrix,
    load_builtin_taxonomy,
    resolve_nfr_conflicts,
    spec_from_dict,
    validate_spec,
)
from .lsi import LsiIndex
from .scoring import aggregate_fields, rank_top3, score_patterns
from .sentiment import (
    NEGATIVE_LABELS,
    POSITIVE_LABELS,
    SentimentLexicon,
    sentiment_for,
)

_DATA_DIR = Path(__file__).resolve().parent / "data"


@dataclass(frozen=True)
class Recommendation:
    rank: int
    pattern_name: str
    confidence: float
    sentiment_label: str
    sentiment_score: int
    evidence_count: int

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "pattern_name": self.pattern_name,
            "confidence": self.confidence,
            "sentiment_label": self.sentiment_label,
            "sentiment_score": self.sentiment_score,
            "evidence_count": self.evidence_count,
        }


@dataclass(frozen=True)
class RecommendationSet:
    recommendations: tuple[Recommendation, ...]
    trace: dict
    config_snapshot: dict

    def to_dict(self) -> dict:
        return {
            "recommendations": [r.to_dict() for r in self.recommendations],
            "trace": self.trace,
            "config": self.config_snapshot,
        }


def recommend(
    spec: RequirementsSpec,
    catalog: PatternCatalog,
    index: LsiIndex,
    lexicon: SentimentLexicon,
    config: PipelineConfig | None = None,
    *,
    conflict_matrix: ConflictMatrix | None = None,
    taxonomy: Taxonomy | None = None,
    priorities: dict[str, int] | None = None,
    top: int = 3,
) -> RecommendationSet:
    """Rank the catalog for a spec and annotate the winners with sentiment.

    Raises SpecValidationError on violated input limits and
    ResolutionRequiredError when supplied NFRs conflict and no priorities
    decide between them.
    """
    cfg = config if config is not None else PipelineConfig()
    matrix = conflict_matrix if conflict_matrix is not None else load_builtin_conflict_matrix()
    taxo = taxonomy if taxonomy is not None else load_builtin_taxonomy()

    spec, issues = validate_spec(spec, taxo)
    if issues:
        raise SpecValidationError(issues)

    conflicts = check_nfr_conflicts(spec.nfrs, matrix)
    nfrs = list(spec.nfrs)
    if conflicts:
        nfrs = resolve_nfr_conflicts(spec.nfrs, conflicts, priorities)
    scored_spec = RequirementsSpec(
        short_description=spec.short_description,
        detailed_description=spec.detailed_description,
        use_cases=spec.use_cases,
        nfrs=tuple(nfrs),
        software_type=spec.software_type,
    )

    agg = aggregate_fields(scored_spec.use_cases)
    table = score_patterns(
        scored_spec,
        agg,
        catalog,
        cfg.entailment(),
        include_flow_term=cfg.include_flow_term,
        normalize_by_importance_mass=cfg.normalize_by_importance_mass,
    )
    ranked = rank_top3(table)[: max(1, min(3, top))]

    type_label = taxo.resolve(scored_spec.software_type).label
    recommendations = []
    for position, (name, confidence) in enumerate(ranked, start=1):
        outcome = sentiment_for(
            name,
            type_label,
            index,
            lexicon,
            max_results=cfg.max_results,
            min_similarity=cfg.min_similarity,
            thresholds=cfg.bucket_thresholds,
        )
        recommendations.append(
            Recommendation(
                rank=position,
                pattern_name=name,
                confidence=confidence,
                sentiment_label=outcome.label,
                sentiment_score=outcome.total,
                evidence_count=outcome.evidence_count,
            )
        )

    trace = {name: table.traces[name].to_dict() for name in sorted(table.confidences)}
    return RecommendationSet(
        recommendations=tuple(recommendations),
        trace=trace,
        config_snapshot=cfg.to_dict(),
    )


# ---------------------------------------------------------------------------
# Evaluation harness


@dataclass(frozen=True)
class EvalCase:
    id: str
    expected_pattern: str
    spec: RequirementsSpec
    title: str = ""


@dataclass
class EvalReport:
    case_count: int
    rank_counts: dict  # {"1": n, "2": n, "3": n, "miss": n}
    sentiment_counts: dict  # {"1": {"positive": n, "negative": n}, ...}
    top1_pct: float
    case_results: list
    warnings: list

    def to_dict(self) -> dict:
        return {
            "case_count": self.case_count,
            "rank_counts": self.rank_counts,
            "sentiment_counts": self.sentiment_counts,
            "top1_pct": self.top1_pct,
            "cases": self.case_results,
            "warnings": self.warnings,
        }


def load_eval_case(path: str | Path) -> EvalCase:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return EvalCase(
        id=str(raw.get("id", Path(path).stem)),
        title=str(raw.get("title", "")),
        expected_pattern=str(raw["expected_pattern"]),
        spec=spec_from_dict(raw["spec"]),
    )


def load_eval_cases(directory: str | Path) -> list[EvalCase]:
    directory = Path(directory)
    cases = [load_eval_case(p) for p in sorted(directory.glob("*.json"))]
    return cases


def builtin_eval_cases_dir() -> Path:
    return _DATA_DIR / "eval_cases"


def evaluate(
    cases,
    catalog: PatternCatalog,
    index: LsiIndex,
    lexicon: SentimentLexicon,
    config: PipelineConfig | None = None,
    *,
    conflict_matrix: ConflictMatrix | None = None,
    taxonomy: Taxonomy | None = None,
) -> EvalReport:
    """Replay every case through the pipeline and tally expected ranks.

    Invalid cases are reported under warnings and excluded from tallies;
    rank and sentiment counts therefore always add up to the number of
    valid cases.
    """
    cases = list(cases)
    if not cases:
        raise ValueError("evaluation needs at least one case")

    rank_counts = {"1": 0, "2": 0, "3": 0, "miss": 0}
    sentiment_counts = {
        "1": {"positive": 0, "negative": 0},
        "2": {"positive": 0, "negative": 0},
        "3": {"positive": 0, "negative": 0},
    }
    case_results = []
    warnings = []
    valid = 0
    for case in cases:
        try:
            result = recommend(
                case.spec,
                catalog,
                index,
                lexicon,
                config,
                conflict_matrix=conflict_matrix,
                taxonomy=taxonomy,
            )
        except Exception as exc:  # noqa: BLE001 - per-case isolation is the contract
            warnings.append(f"case {case.id!r} skipped: {exc}")
            continue
        valid += 1
        found_rank = None
        for rec in result.recommendations:
            if rec.pattern_name == case.expected_pattern:
                found_rank = rec.rank
            if rec.sentiment_label in POSITIVE_LABELS:
                sentiment_counts[str(rec.rank)]["positive"] += 1
            elif rec.sentiment_label in NEGATIVE_LABELS:
                sentiment_counts[str(rec.rank)]["negative"] += 1
        rank_counts[str(found_rank) if found_rank else "miss"] += 1
        case_results.append(
            {
                "id": case.id,
                "expected_pattern": case.expected_pattern,
                "found_rank": found_rank,
                "recommendations": [r.to_dict() for r in result.recommendations],
            }
        )

    top1_pct = 100.0 * rank_counts["1"] / valid if valid else 0.0
    return EvalReport(
        case_count=valid,
        rank_counts=rank_counts,
        sentiment_counts=sentiment_counts,
        top1_pct=top1_pct,
        case_results=case_results,
        warnings=warnings,
    )
