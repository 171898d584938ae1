"""Query-level similarity and the pairwise dissimilarity matrix.

Two measures are supported:

``DiscoLike``
    word-level similarity lifted to phrases: for each word of one query take
    its best match in the other, average over the first query's words, then
    average both directions.  Dissimilarity is ``1 - similarity``.
``Ngd``
    normalized hit-count distance over a local document index.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_dissimilarity, check_queries
from .corpus import (
    CooccurrenceModel,
    DEFAULT_MIN_COUNT,
    DEFAULT_WINDOW,
    build_cooccurrence_model,
    build_document_index,
    hit_count,
    similarity_table,
    word_similarity,
)
from .errors import FormatError


@dataclass(frozen=True)
class Query:
    raw: str
    tokens: tuple

    @classmethod
    def from_text(cls, text):
        return check_queries([text])[0]


def _as_word_sim(backend):
    if isinstance(backend, CooccurrenceModel):
        return lambda a, b: word_similarity(backend, a, b)
    return backend


def phrase_sim_directed(backend, q1, q2):
    """Mean over words of ``q1`` of their best backend score against ``q2``.

    Repeated words in ``q1`` each count once per occurrence.
    """
    sim = _as_word_sim(backend)
    total = 0.0
    for w in q1.tokens:
        total += max(sim(w, v) for v in q2.tokens)
    return total / len(q1.tokens)


def phrase_sim(backend, q1, q2):
    return (phrase_sim_directed(backend, q1, q2) + phrase_sim_directed(backend, q2, q1)) / 2


def ngd_raw(index, q1, q2):
    """The unclamped normalized distance, or None where a fixed rule applies.

    Rules: equal token sets give 0; a zero hit count gives 1; a zero
    denominator (both queries match every document) gives 0.
    """
    if index.doc_count < 2:
        raise ValueError("normalized distance needs at least 2 documents")
    s1, s2 = set(q1.tokens), set(q2.tokens)
    if s1 == s2:
        return None
    f1, f2, f12 = hit_count(index, s1), hit_count(index, s2), hit_count(index, s1 | s2)
    if f1 == 0 or f2 == 0 or f12 == 0:
        return None
    # log(a) - log(b) written as log(a / b): one rounding instead of a cancellation
    denom = math.log(index.doc_count / min(f1, f2))
    if denom == 0:
        return None
    return math.log(max(f1, f2) / f12) / denom


def _ngd_rule(index, q1, q2):
    if set(q1.tokens) == set(q2.tokens):
        return 0.0
    f12 = hit_count(index, set(q1.tokens) | set(q2.tokens))
    return 1.0 if f12 == 0 else 0.0


def ngd(index, q1, q2):
    """Normalized distance between two queries, clamped into [0, 1]."""
    raw = ngd_raw(index, q1, q2)
    if raw is None:
        return _ngd_rule(index, q1, q2)
    return min(1.0, max(0.0, raw))


@dataclass(frozen=True)
class DiscoLike:
    """Word-similarity backend: a CooccurrenceModel or any ``f(w1, w2) -> [0, 1]``."""

    backend: object
    name = "disco"


@dataclass(frozen=True)
class Ngd:
    index: object
    name = "ngd"


@dataclass(eq=False)
class DissimilarityMatrix:
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def sub(self, start, stop):
        return DissimilarityMatrix(self.values[start:stop, start:stop].copy(), dict(self.meta))


def _word_table(backend, vocab):
    if isinstance(backend, CooccurrenceModel):
        return similarity_table(backend, vocab)
    return np.array([[backend(a, b) for b in vocab] for a in vocab], dtype=np.float64)


def directed_matrix(backend, queries):
    """All directed phrase similarities: entry (i, j) scores query i against j."""
    vocab = sorted({t for q in queries for t in q.tokens})
    pos = {t: i for i, t in enumerate(vocab)}
    T = len(vocab)
    table = np.full((T + 1, T + 1), -1.0)
    table[:T, :T] = _word_table(backend, vocab)

    n = len(queries)
    width = max(len(q.tokens) for q in queries)
    padded = np.full((n, width), T)
    for i, q in enumerate(queries):
        padded[i, : len(q.tokens)] = [pos[t] for t in q.tokens]

    out = np.empty((n, n))
    for i, q in enumerate(queries):
        rows = table[[pos[t] for t in q.tokens]]          # (a, T+1)
        best = rows[:, padded].max(axis=2)                # (a, n)
        out[i] = best.sum(axis=0) / len(q.tokens)
    return out


def build_matrix(queries, measure):
    """Symmetric dissimilarity matrix with zero diagonal and entries in [0, 1]."""
    queries = check_queries(queries)
    n = len(queries)
    meta = {"measure": measure.name}
    if isinstance(measure, DiscoLike):
        directed = directed_matrix(measure.backend, queries)
        sim = (directed + directed.T) / 2
        D = np.clip(1.0 - sim, 0.0, 1.0)
        meta.update(symmetrize="mean", conversion="1-similarity")
    elif isinstance(measure, Ngd):
        D = np.zeros((n, n))
        out_of_range = 0
        for i in range(n):
            for j in range(i + 1, n):
                raw = ngd_raw(measure.index, queries[i], queries[j])
                if raw is None:
                    v = _ngd_rule(measure.index, queries[i], queries[j])
                else:
                    if raw < 0 or raw > 1:
                        out_of_range += 1
                    v = min(1.0, max(0.0, raw))
                D[i, j] = D[j, i] = v
        meta.update(conversion="clamp", out_of_range=out_of_range)
    else:
        raise TypeError(f"unknown measure {measure!r}")
    np.fill_diagonal(D, 0.0)
    return DissimilarityMatrix(D, meta)


# -- file format -----------------------------------------------------------

def write_matrix(matrix, fh):
    meta = matrix.meta if isinstance(matrix, DissimilarityMatrix) else {}
    values = np.asarray(matrix)
    fh.write("# querysift dissimilarity matrix\n")
    for key in sorted(meta):
        fh.write(f"# {key}={meta[key]}\n")
    fh.write(f"{values.shape[0]}\n")
    for row in values:
        fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def read_matrix(fh, source=None):
    meta = {}
    n = None
    rows = []
    header_line = None
    for lineno, line in enumerate(fh, 1):
        text = line.strip()
        if n is None:
            if not text:
                continue
            if text.startswith("#"):
                key, eq, value = text[1:].strip().partition("=")
                if eq:
                    meta[key.strip()] = value.strip()
                continue
            header_line = lineno
            try:
                n = int(text)
            except ValueError:
                raise FormatError(f"header must be the matrix size, got {text!r}", lineno, source) from None
            if n < 1:
                raise FormatError("matrix size must be positive", lineno, source)
            continue
        if not text:
            continue
        if len(rows) == n:
            raise FormatError("more rows than the header declares", lineno, source)
        try:
            row = [float(x) for x in text.split()]
        except ValueError:
            raise FormatError("non-numeric matrix entry", lineno, source) from None
        if len(row) != n:
            raise FormatError(f"expected {n} values, got {len(row)}", lineno, source)
        rows.append(row)
    if n is None:
        raise FormatError("missing header line", None, source)
    if len(rows) != n:
        raise FormatError(f"header declares {n} rows, found {len(rows)}", header_line, source)
    try:
        D = check_dissimilarity(np.array(rows))
    except ValueError as exc:
        raise FormatError(str(exc), None, source) from None
    return DissimilarityMatrix(D, meta)


# -- estimators ------------------------------------------------------------

class DistributionalDissimilarity(TransformerMixin, BaseEstimator):
    """Queries -> phrase dissimilarity matrix from a co-occurrence model.

    ``fit`` trains on ``corpus`` (or on the queries themselves when no corpus
    is given) unless a prebuilt ``model`` is supplied.
    """

    def __init__(self, corpus=None, model=None, window=DEFAULT_WINDOW, min_count=DEFAULT_MIN_COUNT):
        self.corpus = corpus
        self.model = model
        self.window = window
        self.min_count = min_count

    def fit(self, X=None, y=None):
        if self.model is not None:
            self.model_ = self.model
        else:
            docs = self.corpus if self.corpus is not None else X
            self.model_ = build_cooccurrence_model(docs, self.window, self.min_count)
        return self

    def transform(self, X):
        check_is_fitted(self, "model_")
        return build_matrix(X, DiscoLike(self.model_)).values


class NGDDissimilarity(TransformerMixin, BaseEstimator):
    """Queries -> normalized hit-count distance matrix over a document index.

    ``n_out_of_range_`` records how many pairs needed clamping on the last
    ``transform``.
    """

    def __init__(self, corpus=None, index=None):
        self.corpus = corpus
        self.index = index

    def fit(self, X=None, y=None):
        if self.index is not None:
            self.index_ = self.index
        else:
            docs = self.corpus if self.corpus is not None else X
            self.index_ = build_document_index(docs)
        return self

    def transform(self, X):
        check_is_fitted(self, "index_")
        m = build_matrix(X, Ngd(self.index_))
        self.n_out_of_range_ = m.meta["out_of_range"]
        return m.values
