"""Crowd-sentiment labels for recommended patterns.

A valence lexicon (single words plus multi-word domain phrases) scores
each retrieved post body; the totals add up and fall into one of seven
ordered labels.  No retrieved evidence always means neutral.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from . import lsi

_DATA_DIR = Path(__file__).resolve().parent / "data"
_TOKEN_RE = re.compile(r"[^\W_]+")

STRONGLY_POSITIVE = "strongly_positive"
POSITIVE = "positive"
SLIGHTLY_POSITIVE = "slightly_positive"
NEUTRAL = "neutral"
SLIGHTLY_NEGATIVE = "slightly_negative"
NEGATIVE = "negative"
STRONGLY_NEGATIVE = "strongly_negative"

LABELS = (
    STRONGLY_POSITIVE,
    POSITIVE,
    SLIGHTLY_POSITIVE,
    NEUTRAL,
    SLIGHTLY_NEGATIVE,
    NEGATIVE,
    STRONGLY_NEGATIVE,
)

POSITIVE_LABELS = frozenset((STRONGLY_POSITIVE, POSITIVE, SLIGHTLY_POSITIVE))
NEGATIVE_LABELS = frozenset((SLIGHTLY_NEGATIVE, NEGATIVE, STRONGLY_NEGATIVE))


@dataclass(frozen=True)
class BucketThresholds:
    """Totals at or beyond each boundary move into the stronger label."""

    slightly_positive_min: int = 1
    positive_min: int = 3
    strongly_positive_min: int = 8
    slightly_negative_max: int = -1
    negative_max: int = -3
    strongly_negative_max: int = -8

    def to_dict(self) -> dict:
        return {
            "slightly_positive_min": self.slightly_positive_min,
            "positive_min": self.positive_min,
            "strongly_positive_min": self.strongly_positive_min,
            "slightly_negative_max": self.slightly_negative_max,
            "negative_max": self.negative_max,
            "strongly_negative_max": self.strongly_negative_max,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "BucketThresholds":
        return cls(**{k: int(v) for k, v in raw.items()})


DEFAULT_THRESHOLDS = BucketThresholds()


class SentimentLexicon:
    """word -> valence plus greedy multi-word phrase matching."""

    def __init__(self, words: dict[str, int], phrases: dict[tuple[str, ...], int]):
        for term, valence in list(words.items()) + [
            (" ".join(p), v) for p, v in phrases.items()
        ]:
            if not -5 <= valence <= 5:
                raise ValueError(f"valence for {term!r} outside [-5, 5]: {valence}")
            if term != term.lower():
                raise ValueError(f"lexicon term must be lowercase: {term!r}")
        self.words = dict(words)
        self.phrases = dict(phrases)
        self.max_phrase_len = max((len(p) for p in phrases), default=1)

    def __len__(self) -> int:
        return len(self.words) + len(self.phrases)


def load_lexicon(*paths: str | Path) -> SentimentLexicon:
    """Merge one or more `term<TAB>valence` files; later files win."""
    words: dict[str, int] = {}
    phrases: dict[tuple[str, ...], int] = {}
    for path in paths:
        for lineno, line in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                term, raw_valence = line.rsplit("\t", 1)
                valence = int(raw_valence)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: expected 'term<TAB>integer'") from exc
            tokens = tuple(_TOKEN_RE.findall(term.casefold()))
            if not tokens:
                raise ValueError(f"{path}:{lineno}: empty term")
            if len(tokens) == 1:
                words[tokens[0]] = valence
            else:
                phrases[tokens] = valence
    return SentimentLexicon(words, phrases)


def builtin_lexicon_paths() -> tuple[Path, Path]:
    return (_DATA_DIR / "sentiment_lexicon.txt", _DATA_DIR / "sentiment_domain.txt")


def load_builtin_lexicon() -> SentimentLexicon:
    return load_lexicon(*builtin_lexicon_paths())


def score_text(text: str, lexicon: SentimentLexicon) -> int:
    """Sum of matched valences; phrases match greedily before single words.

    Tokenization keeps stop words, since function words can carry valence.
    """
    tokens = _TOKEN_RE.findall(text.casefold())
    total = 0
    i = 0
    n = len(tokens)
    while i < n:
        matched = False
        longest = min(lexicon.max_phrase_len, n - i)
        for length in range(longest, 1, -1):
            candidate = tuple(tokens[i : i + length])
            if candidate in lexicon.phrases:
                total += lexicon.phrases[candidate]
                i += length
                matched = True
                break
        if not matched:
            total += lexicon.words.get(tokens[i], 0)
            i += 1
    return total


def aggregate_sentiment(results, lexicon: SentimentLexicon) -> tuple[int, int]:
    """(summed valence over post bodies, number of posts inspected)."""
    total = 0
    count = 0
    for result in results:
        total += score_text(result.post.body, lexicon)
        count += 1
    return total, count


def bucket(
    total: int, evidence_count: int, thresholds: BucketThresholds = DEFAULT_THRESHOLDS
) -> str:
    """Map a summed valence onto the seven-level scale.

    No evidence is neutral by contract, regardless of total.
    """
    if evidence_count == 0:
        return NEUTRAL
    if total >= thresholds.strongly_positive_min:
        return STRONGLY_POSITIVE
    if total >= thresholds.positive_min:
        return POSITIVE
    if total >= thresholds.slightly_positive_min:
        return SLIGHTLY_POSITIVE
    if total <= thresholds.strongly_negative_max:
        return STRONGLY_NEGATIVE
    if total <= thresholds.negative_max:
        return NEGATIVE
    if total <= thresholds.slightly_negative_max:
        return SLIGHTLY_NEGATIVE
    return NEUTRAL


def synthesize_query(pattern_name: str, software_type_label: str) -> str:
    """Retrieval query for a recommendation: `<pattern> for <type>`."""
    if not pattern_name.strip():
        raise ValueError("pattern_name must be non-empty")
    if not software_type_label.strip():
        raise ValueError("software_type_label must be non-empty")
    return f"{pattern_name} for {software_type_label}"


@dataclass(frozen=True)
class SentimentOutcome:
    label: str
    total: int
    evidence_count: int


def sentiment_for(
    pattern_name: str,
    software_type_label: str,
    index: lsi.LsiIndex,
    lexicon: SentimentLexicon,
    *,
    max_results: int = 50,
    min_similarity: float = 0.2,
    thresholds: BucketThresholds = DEFAULT_THRESHOLDS,
) -> SentimentOutcome:
    """Retrieve, score and bucket the crowd opinion for one pattern."""
    query_text = synthesize_query(pattern_name, software_type_label)
    results = lsi.query(
        index, query_text, max_results=max_results, min_similarity=min_similarity
    )
    total, count = aggregate_sentiment(results, lexicon)
    return SentimentOutcome(
        label=bucket(total, count, thresholds), total=total, evidence_count=count
    )
