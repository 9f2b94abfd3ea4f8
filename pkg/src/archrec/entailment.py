"""Graded lexical entailment between a text and a hypothesis.

The scorer replaces a trained entailment engine with a deterministic
composite: how much of the hypothesis vocabulary the text covers, blended
with a normalized token-sequence edit similarity.  Scores are always in
[0, 1] and identical inputs always score 1.0, which makes the downstream
confidence sums reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

_DATA_DIR = Path(__file__).resolve().parent / "data"
# alphanumeric runs; casefolded input keeps case changes score-invariant
_TOKEN_RE = re.compile(r"[^\W_]+")

COVERAGE_BLEND = "coverage_blend"
COVERAGE_ONLY = "coverage_only"
EDIT_DISTANCE_ONLY = "edit_distance_only"
APPROACHES = (COVERAGE_BLEND, COVERAGE_ONLY, EDIT_DISTANCE_ONLY)


@lru_cache(maxsize=1)
def default_stop_words() -> frozenset[str]:
    """Bundled stop-word list, shared by entailment scoring and indexing."""
    path = _DATA_DIR / "stopwords.txt"
    words = frozenset(
        line.strip() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()
    )
    return words


def tokenize(text: str, stop_words: frozenset[str] | set[str]) -> list[str]:
    """Lowercase, split on non-alphanumeric runs, drop stop words.

    Order is preserved; empty tokens never appear.
    """
    return [t for t in _TOKEN_RE.findall(text.casefold()) if t not in stop_words]


def token_edit_distance(a, b) -> int:
    """Levenshtein distance between two token sequences (unit costs)."""
    # Shared prefixes and suffixes cannot change the distance; stripping
    # them keeps the DP small for near-identical inputs.
    i = 0
    la, lb = len(a), len(b)
    while i < la and i < lb and a[i] == b[i]:
        i += 1
    j = 0
    while j < la - i and j < lb - i and a[la - 1 - j] == b[lb - 1 - j]:
        j += 1
    a = a[i : la - j]
    b = b[i : lb - j]
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    row = list(range(len(b) + 1))
    for i, ta in enumerate(a, start=1):
        diag = row[0]
        row[0] = i
        prev_cell = i
        jj = 1
        for tb in b:
            above = row[jj]
            c = diag if ta == tb else diag + 1
            d = above + 1
            if d < c:
                c = d
            e = prev_cell + 1
            if e < c:
                c = e
            row[jj] = c
            prev_cell = c
            diag = above
            jj += 1
    return row[-1]


@dataclass(frozen=True)
class EntailmentConfig:
    """Tunables of the lexical scorer.

    alpha weights hypothesis coverage against edit similarity; the approach
    switch selects which component(s) drive the score.
    """

    alpha: float = 0.8
    stop_words: frozenset[str] = field(default_factory=default_stop_words)
    approach: str = COVERAGE_BLEND

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.approach not in APPROACHES:
            raise ValueError(f"unknown approach {self.approach!r}")


_DEFAULT_CONFIG: EntailmentConfig | None = None


def default_config() -> EntailmentConfig:
    global _DEFAULT_CONFIG
    if _DEFAULT_CONFIG is None:
        _DEFAULT_CONFIG = EntailmentConfig()
    return _DEFAULT_CONFIG


def text_entail(text: str, hypothesis: str, config: EntailmentConfig | None = None) -> float:
    """Score how strongly `text` supports `hypothesis`, in [0, 1].

    coverage = fraction of distinct hypothesis tokens present in the text
    (0 when the hypothesis has no content tokens).  editsim = 1 - d/max_len
    over the token sequences, with editsim = 1 when both are empty and 0
    when exactly one is.  The blend is alpha*coverage + (1-alpha)*editsim.
    """
    cfg = config if config is not None else default_config()
    t_tokens = tokenize(text, cfg.stop_words)
    h_tokens = tokenize(hypothesis, cfg.stop_words)

    h_set = set(h_tokens)
    coverage = len(h_set & set(t_tokens)) / len(h_set) if h_set else 0.0

    if not t_tokens and not h_tokens:
        editsim = 1.0
    elif not t_tokens or not h_tokens:
        editsim = 0.0
    else:
        dist = token_edit_distance(t_tokens, h_tokens)
        editsim = 1.0 - dist / max(len(t_tokens), len(h_tokens))

    if cfg.approach == COVERAGE_ONLY:
        return coverage
    if cfg.approach == EDIT_DISTANCE_ONLY:
        return editsim
    return cfg.alpha * coverage + (1.0 - cfg.alpha) * editsim
