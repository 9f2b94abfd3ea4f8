"""Latent semantic index over a post corpus.

TF-IDF weighting (raw term counts, idf = ln(N/df)) feeds a truncated SVD
computed by power iteration with deflation on the document Gram matrix,
followed by one Rayleigh-Ritz rotation that orthonormalizes the basis and
orders the singular values.  Documents and queries meet in the latent
space where, at full rank, cosine similarity reproduces plain TF-IDF
cosine similarity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from .corpus import Post, _post_from_dict, _post_to_dict
from .entailment import default_stop_words, tokenize
from .errors import IndexError_

INDEX_FORMAT_VERSION = 1

_POWER_TOL = 1e-10
_MAX_POWER_ITERS = 1000
_RANK_REL_TOL = 1e-12
_SEED = 20170403


@dataclass(frozen=True)
class QueryResult:
    post: Post
    similarity: float


@dataclass
class LsiIndex:
    vocabulary: dict[str, int]
    posts: list[Post]
    tfidf: sparse.csr_matrix  # terms x documents
    idf: np.ndarray
    rank_k: int
    left_factor: np.ndarray  # terms x k
    singular_values: np.ndarray  # k, non-increasing
    doc_factor: np.ndarray  # documents x k (right singular vectors as rows)
    doc_norms: np.ndarray  # norms of the latent document vectors
    stop_words: frozenset[str]

    def latent_documents(self) -> np.ndarray:
        """Latent document vectors: rows of V scaled by the singular values."""
        return self.doc_factor * self.singular_values[np.newaxis, :]


def _tokenize_corpus(posts, stop_words):
    return [tokenize(p.body, stop_words) for p in posts]


def _build_tfidf(token_lists, vocabulary):
    n_terms = len(vocabulary)
    n_docs = len(token_lists)
    df = np.zeros(n_terms)
    rows, cols, vals = [], [], []
    for doc_id, tokens in enumerate(token_lists):
        counts: dict[int, int] = {}
        for tok in tokens:
            counts[vocabulary[tok]] = counts.get(vocabulary[tok], 0) + 1
        for term_id in counts:
            df[term_id] += 1
        for term_id, count in counts.items():
            rows.append(term_id)
            cols.append(doc_id)
            vals.append(float(count))
    idf = np.log(n_docs / np.maximum(df, 1.0))
    matrix = sparse.csr_matrix(
        (vals, (rows, cols)), shape=(n_terms, n_docs), dtype=np.float64
    )
    # scale each row (term) by its idf
    matrix = sparse.diags(idf) @ matrix
    return matrix.tocsr(), idf


def _truncated_svd(matrix: sparse.csr_matrix, rank_k: int):
    """Rank-limited SVD of the sparse matrix via power iteration.

    Works on the document Gram matrix C = A^T A (documents are few), finds
    its leading eigenvectors one at a time with projection deflation, then
    refines the collected basis with a single dense Rayleigh-Ritz step.
    """
    n_docs = matrix.shape[1]
    gram = (matrix.T @ matrix).toarray()
    trace = float(np.trace(gram))
    if trace <= 0.0:
        # All weights are zero (e.g. a single-document corpus, where every
        # idf is ln(1) = 0).  Any orthonormal pair with a zero singular
        # value is an exact rank-1 truncated SVD of the zero matrix.
        left = np.zeros((matrix.shape[0], 1))
        left[0, 0] = 1.0
        v_factor = np.zeros((n_docs, 1))
        v_factor[0, 0] = 1.0
        return left, np.zeros(1), v_factor

    rng = np.random.default_rng(_SEED)
    k_max = min(rank_k, matrix.shape[0], n_docs)
    basis: list[np.ndarray] = []
    for _ in range(k_max):
        x = rng.standard_normal(n_docs)
        for v in basis:
            x -= (v @ x) * v
        norm = np.linalg.norm(x)
        if norm == 0.0:
            break
        x /= norm
        sigma_prev = np.inf
        exhausted = False
        for _ in range(_MAX_POWER_ITERS):
            y = gram @ x
            for v in basis:
                y -= (v @ y) * v
            norm = np.linalg.norm(y)
            if norm <= trace * 1e-15:
                exhausted = True
                break
            x = y / norm
            sigma = float(np.sqrt(norm))
            if abs(sigma - sigma_prev) <= _POWER_TOL * max(1.0, sigma):
                break
            sigma_prev = sigma
        if exhausted:
            break
        lam = float(x @ (gram @ x))
        if lam <= trace * _RANK_REL_TOL:
            break
        basis.append(x)

    if not basis:
        raise IndexError_("matrix rank is zero; nothing to index")

    v_raw = np.array(basis).T  # n_docs x k
    # Rayleigh-Ritz: rotate the converged basis onto exact eigenvectors of
    # the projected Gram matrix; orders eigenvalues and cleans orthogonality.
    small = v_raw.T @ gram @ v_raw
    small = (small + small.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(small)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    keep = eigvals > max(eigvals[0], 0.0) * _RANK_REL_TOL
    eigvals = np.maximum(eigvals[keep], 0.0)
    v_factor = v_raw @ eigvecs[:, keep]
    singular_values = np.sqrt(eigvals)
    left = (matrix @ v_factor) / singular_values[np.newaxis, :]
    return left, singular_values, v_factor


def build_index(
    corpus, rank_k: int, stop_words: frozenset[str] | None = None
) -> LsiIndex:
    """Index a post corpus at (up to) the requested latent rank."""
    posts = list(corpus)
    if not posts:
        raise IndexError_("cannot index an empty corpus")
    if rank_k < 1:
        raise IndexError_(f"rank_k must be >= 1, got {rank_k}")
    stops = stop_words if stop_words is not None else default_stop_words()

    token_lists = _tokenize_corpus(posts, stops)
    vocabulary = {term: i for i, term in enumerate(sorted({t for toks in token_lists for t in toks}))}
    if not vocabulary:
        raise IndexError_("corpus has no indexable terms (all tokens filtered)")
    tfidf, idf = _build_tfidf(token_lists, vocabulary)
    left, singular_values, doc_factor = _truncated_svd(tfidf, rank_k)
    latent = doc_factor * singular_values[np.newaxis, :]
    doc_norms = np.linalg.norm(latent, axis=1)
    return LsiIndex(
        vocabulary=vocabulary,
        posts=posts,
        tfidf=tfidf,
        idf=idf,
        rank_k=len(singular_values),
        left_factor=left,
        singular_values=singular_values,
        doc_factor=doc_factor,
        doc_norms=doc_norms,
        stop_words=frozenset(stops),
    )


def _query_vector(index: LsiIndex, query_text: str) -> np.ndarray | None:
    tokens = tokenize(query_text, index.stop_words)
    counts: dict[int, int] = {}
    for tok in tokens:
        term_id = index.vocabulary.get(tok)
        if term_id is not None:
            counts[term_id] = counts.get(term_id, 0) + 1
    if not counts:
        return None
    q = np.zeros(len(index.vocabulary))
    for term_id, count in counts.items():
        q[term_id] = count * index.idf[term_id]
    return q


def query(
    index: LsiIndex,
    query_text: str,
    max_results: int = 50,
    min_similarity: float = 0.2,
) -> list[QueryResult]:
    """Posts most similar to the query in latent space.

    Query terms unknown to the vocabulary are dropped; a query with no
    known terms returns no results.  Ordering: similarity descending,
    ties by ascending post id.
    """
    if max_results < 1:
        raise ValueError(f"max_results must be >= 1, got {max_results}")
    q = _query_vector(index, query_text)
    if q is None:
        return []
    q_latent = index.left_factor.T @ q
    q_norm = np.linalg.norm(q_latent)
    if q_norm == 0.0:
        return []
    latent = index.latent_documents()
    sims = latent @ q_latent
    denom = index.doc_norms * q_norm
    with np.errstate(divide="ignore", invalid="ignore"):
        sims = np.where(denom > 0.0, sims / np.where(denom > 0.0, denom, 1.0), 0.0)
    hits = [
        QueryResult(post=index.posts[i], similarity=float(sims[i]))
        for i in range(len(index.posts))
        if sims[i] >= min_similarity
    ]
    hits.sort(key=lambda r: (-r.similarity, r.post.id))
    return hits[:max_results]


# ---------------------------------------------------------------------------
# Persistence


def save_index(index: LsiIndex, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    meta = {
        "format_version": INDEX_FORMAT_VERSION,
        "rank_k": index.rank_k,
        "terms": sorted(index.vocabulary, key=index.vocabulary.get),
        "stop_words": sorted(index.stop_words),
    }
    (directory / "meta.json").write_text(json.dumps(meta) + "\n", encoding="utf-8")
    with (directory / "posts.jsonl").open("w", encoding="utf-8") as handle:
        for post in index.posts:
            handle.write(json.dumps(_post_to_dict(post), sort_keys=True) + "\n")
    coo = index.tfidf.tocoo()
    np.savez(
        directory / "factors.npz",
        idf=index.idf,
        left_factor=index.left_factor,
        singular_values=index.singular_values,
        doc_factor=index.doc_factor,
        doc_norms=index.doc_norms,
        tfidf_row=coo.row,
        tfidf_col=coo.col,
        tfidf_data=coo.data,
        tfidf_shape=np.array(coo.shape),
    )


def load_index(directory: str | Path) -> LsiIndex:
    directory = Path(directory)
    meta_file = directory / "meta.json"
    if not meta_file.exists():
        raise IndexError_(f"no index found under {directory}")
    meta = json.loads(meta_file.read_text(encoding="utf-8"))
    if meta.get("format_version") != INDEX_FORMAT_VERSION:
        raise IndexError_(
            f"unsupported index format version {meta.get('format_version')!r}"
        )
    posts = []
    with (directory / "posts.jsonl").open(encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                posts.append(_post_from_dict(json.loads(line)))
    arrays = np.load(directory / "factors.npz")
    shape = tuple(arrays["tfidf_shape"])
    tfidf = sparse.coo_matrix(
        (arrays["tfidf_data"], (arrays["tfidf_row"], arrays["tfidf_col"])), shape=shape
    ).tocsr()
    vocabulary = {term: i for i, term in enumerate(meta["terms"])}
    return LsiIndex(
        vocabulary=vocabulary,
        posts=posts,
        tfidf=tfidf,
        idf=arrays["idf"],
        rank_k=int(meta["rank_k"]),
        left_factor=arrays["left_factor"],
        singular_values=arrays["singular_values"],
        doc_factor=arrays["doc_factor"],
        doc_norms=arrays["doc_norms"],
        stop_words=frozenset(meta["stop_words"]),
    )
