"""archrec: architectural-pattern recommendations from structured requirements.

The pipeline scores a curated pattern catalog against a requirements spec
with importance-weighted lexical entailment, ranks the top three, and
annotates each with a crowd-sentiment label mined from an LSI-indexed
Q&A corpus.
"""

__version__ = "0.1.0"

from .catalog import PatternCatalog, PatternRecord, get_pattern, load_catalog, save_catalog
from .config import PipelineConfig
from .corpus import Post, ingest_posts
from .entailment import EntailmentConfig, text_entail, tokenize
from .inputs import (
    NfrItem,
    RequirementsSpec,
    UseCase,
    check_nfr_conflicts,
    load_spec,
    load_taxonomy,
    resolve_nfr_conflicts,
    resolve_type,
    validate_spec,
)
from .lsi import LsiIndex, build_index, load_index, query, save_index
from .pipeline import EvalCase, EvalReport, Recommendation, RecommendationSet, evaluate, recommend
from .scoring import aggregate_fields, rank_top3, recog_entail, score_patterns
from .sentiment import (
    SentimentLexicon,
    aggregate_sentiment,
    bucket,
    score_text,
    sentiment_for,
    synthesize_query,
)

__all__ = [
    "EntailmentConfig",
    "EvalCase",
    "EvalReport",
    "LsiIndex",
    "NfrItem",
    "PatternCatalog",
    "PatternRecord",
    "PipelineConfig",
    "Post",
    "Recommendation",
    "RecommendationSet",
    "RequirementsSpec",
    "SentimentLexicon",
    "UseCase",
    "aggregate_fields",
    "aggregate_sentiment",
    "bucket",
    "build_index",
    "check_nfr_conflicts",
    "evaluate",
    "get_pattern",
    "ingest_posts",
    "load_catalog",
    "load_index",
    "load_spec",
    "load_taxonomy",
    "query",
    "rank_top3",
    "recog_entail",
    "recommend",
    "resolve_nfr_conflicts",
    "resolve_type",
    "save_catalog",
    "save_index",
    "score_patterns",
    "score_text",
    "sentiment_for",
    "synthesize_query",
    "text_entail",
    "tokenize",
    "validate_spec",
]
