"""Pipeline configuration: one snapshot drives a whole recommendation run."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .entailment import APPROACHES, COVERAGE_BLEND, EntailmentConfig
from .errors import ConfigError
from .sentiment import BucketThresholds

DEFAULT_TAG_FILTER = (
    "software-architecture",
    "architecture",
    "design-patterns",
    "model-view-controller",
    "microkernel",
    "pipes-and-filters",
    "layered-architecture",
    "broker",
)


@dataclass(frozen=True)
class PipelineConfig:
    alpha: float = 0.8
    approach: str = COVERAGE_BLEND
    include_flow_term: bool = False
    normalize_by_importance_mass: bool = False
    rank_k: int = 100
    min_similarity: float = 0.2
    max_results: int = 50
    tag_filter: tuple[str, ...] = DEFAULT_TAG_FILTER
    bucket_thresholds: BucketThresholds = field(default_factory=BucketThresholds)

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.approach not in APPROACHES:
            raise ConfigError(f"unknown entailment approach {self.approach!r}")
        if self.rank_k < 1:
            raise ConfigError(f"rank_k must be >= 1, got {self.rank_k}")
        if self.max_results < 1:
            raise ConfigError(f"max_results must be >= 1, got {self.max_results}")

    def entailment(self) -> EntailmentConfig:
        return EntailmentConfig(alpha=self.alpha, approach=self.approach)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "approach": self.approach,
            "include_flow_term": self.include_flow_term,
            "normalize_by_importance_mass": self.normalize_by_importance_mass,
            "rank_k": self.rank_k,
            "min_similarity": self.min_similarity,
            "max_results": self.max_results,
            "tag_filter": list(self.tag_filter),
            "bucket_thresholds": self.bucket_thresholds.to_dict(),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "PipelineConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config document must be an object")
        kwargs: dict = {}
        simple = (
            "alpha",
            "approach",
            "include_flow_term",
            "normalize_by_importance_mass",
            "rank_k",
            "min_similarity",
            "max_results",
        )
        for key in simple:
            if key in raw:
                kwargs[key] = raw[key]
        if "tag_filter" in raw:
            kwargs["tag_filter"] = tuple(raw["tag_filter"])
        if "bucket_thresholds" in raw:
            kwargs["bucket_thresholds"] = BucketThresholds.from_dict(raw["bucket_thresholds"])
        unknown = set(raw) - set(simple) - {"tag_filter", "bucket_thresholds"}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def with_overrides(self, **kwargs) -> "PipelineConfig":
        return replace(self, **kwargs)


def load_config(path: str | Path) -> PipelineConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return PipelineConfig.from_dict(raw)
