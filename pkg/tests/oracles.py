"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written from the definitions, not from the
production code paths: a full-matrix Levenshtein DP, a dict-based TF-IDF
cosine, and a use-case-loop evaluation of the confidence sum.
"""

from __future__ import annotations

import math

import numpy as np

from archrec.entailment import text_entail, tokenize


def lev_naive(a, b) -> int:
    """Textbook O(n*m) full-matrix edit distance."""
    n, m = len(a), len(b)
    grid = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        grid[i][0] = i
    for j in range(m + 1):
        grid[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            grid[i][j] = min(
                grid[i - 1][j] + 1, grid[i][j - 1] + 1, grid[i - 1][j - 1] + cost
            )
    return grid[n][m]


def lev_naive_batch(seqs_a: np.ndarray, seqs_b: np.ndarray) -> np.ndarray:
    """The same DP recurrence evaluated for every pair of two sequence
    batches at once; sequences are rows of integer arrays."""
    na, la = seqs_a.shape
    nb, lb = seqs_b.shape
    grid = np.zeros((la + 1, lb + 1, na, nb), dtype=np.int16)
    for i in range(la + 1):
        grid[i, 0] = i
    for j in range(lb + 1):
        grid[0, j] = j
    for i in range(1, la + 1):
        for j in range(1, lb + 1):
            cost = (seqs_a[:, i - 1][:, None] != seqs_b[None, :, j - 1]).astype(np.int16)
            grid[i, j] = np.minimum(
                np.minimum(grid[i - 1, j] + 1, grid[i, j - 1] + 1),
                grid[i - 1, j - 1] + cost,
            )
    return grid[la, lb]


def tfidf_vectors(token_lists) -> list[dict[str, float]]:
    """Dict-based TF-IDF vectors: tf = raw count, idf = ln(N/df)."""
    n_docs = len(token_lists)
    df: dict[str, int] = {}
    for tokens in token_lists:
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1
    vectors = []
    for tokens in token_lists:
        counts: dict[str, int] = {}
        for term in tokens:
            counts[term] = counts.get(term, 0) + 1
        vectors.append(
            {term: count * math.log(n_docs / df[term]) for term, count in counts.items()}
        )
    return vectors


def cosine(u: dict[str, float], v: dict[str, float]) -> float:
    dot = sum(w * v.get(t, 0.0) for t, w in u.items())
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def confidence_by_hand(spec, record, config, include_flow_term=False) -> float:
    """The eight (or nine) entailment terms summed directly from the use
    cases, without going through the aggregation types."""
    total = 0.0
    total += text_entail(spec.detailed_description, record.basic_definition, config)
    total += text_entail(spec.short_description, record.known_applications, config)
    for nfr in spec.nfrs:
        total += text_entail(nfr.entail_text(), record.forces, config)

    field_targets = [
        ("objective", record.forces),
        ("actors", record.solution),
        ("constraints", record.forces),
        ("pre_conditions", record.context),
        ("post_conditions", record.consequences),
    ]
    if include_flow_term:
        field_targets.append(("normal_flow", record.solution))
    for field_name, target in field_targets:
        seen = set()
        for uc in sorted(spec.use_cases, key=lambda u: u.id):
            value = getattr(uc, field_name)
            weight = uc.importance_score if uc.importance_score is not None else 1.0
            if not value.strip() or (value, weight) in seen:
                continue
            seen.add((value, weight))
            total += text_entail(value, target, config) * weight
    return total


__all__ = [
    "confidence_by_hand",
    "cosine",
    "lev_naive",
    "lev_naive_batch",
    "tfidf_vectors",
    "tokenize",
]
