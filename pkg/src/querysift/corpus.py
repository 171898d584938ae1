"""Similarity backends trained from a local plain-text corpus.

``CooccurrenceModel`` holds positive-PMI context vectors for word-level
distributional similarity.  ``DocumentIndex`` holds document postings and
answers conjunctive hit-count queries for the normalized distance.
"""
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import sparse

from .errors import FormatError
from .text import tokenize

DEFAULT_WINDOW = 3
DEFAULT_MIN_COUNT = 2

COOC_MAGIC = "querysift-cooccurrence"
INDEX_MAGIC = "querysift-docindex"
FORMAT_VERSION = 1


def read_corpus(path, mode="auto"):
    """Load documents from a directory (one per file) or a file (one per line).

    Files in a directory are read in sorted name order.  Blank lines are not
    documents.
    """
    path = Path(path)
    if mode == "auto":
        mode = "dir" if path.is_dir() else "lines"
    if mode == "dir":
        return [p.read_text(encoding="utf-8") for p in sorted(path.iterdir()) if p.is_file()]
    if mode == "lines":
        with open(path, encoding="utf-8") as fh:
            return [line.rstrip("\n") for line in fh if line.strip()]
    raise ValueError(f"unknown corpus mode {mode!r}")


def _tokenized(corpus):
    docs = [tokenize(d) if isinstance(d, str) else list(d) for d in corpus]
    if not docs:
        raise ValueError("corpus is empty")
    return docs


# -- co-occurrence model ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class CooccurrenceModel:
    vocabulary: dict
    vectors: sparse.csr_matrix
    window: int
    min_count: int
    norms: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        v = self.vectors
        object.__setattr__(self, "norms", np.sqrt(np.asarray(v.multiply(v).sum(axis=1)).ravel()))

    def __contains__(self, token):
        return token in self.vocabulary

    def vector(self, token):
        """Context vector of ``token`` as {context token: weight}."""
        i = self.vocabulary.get(token)
        if i is None:
            return {}
        inv = self._tokens()
        row = self.vectors.getrow(i)
        return {inv[j]: w for j, w in zip(row.indices.tolist(), row.data.tolist())}

    def _tokens(self):
        inv = [None] * len(self.vocabulary)
        for t, i in self.vocabulary.items():
            inv[i] = t
        return inv


def count_cooccurrences(docs, vocabulary, window):
    """Symmetric windowed co-occurrence counts as a sparse integer matrix.

    Positions are taken from the full token stream; pairs touching a token
    outside ``vocabulary`` are discarded.  Counts are integers, so summing
    the result over any partition of ``docs`` gives the same matrix.
    """
    V = len(vocabulary)
    rows, cols = [], []
    for tokens in docs:
        ids = np.array([vocabulary.get(t, -1) for t in tokens], dtype=np.int64)
        for d in range(1, window + 1):
            if len(ids) <= d:
                break
            left, right = ids[:-d], ids[d:]
            keep = (left >= 0) & (right >= 0)
            rows.append(left[keep])
            cols.append(right[keep])
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    both_r = np.concatenate([r, c])
    both_c = np.concatenate([c, r])
    data = np.ones(len(both_r), dtype=np.int64)
    m = sparse.coo_matrix((data, (both_r, both_c)), shape=(V, V)).tocsr()
    m.sum_duplicates()
    return m


def ppmi(counts):
    """Positive PMI weights from a symmetric count matrix; zeros stay absent."""
    counts = sparse.csr_matrix(counts, dtype=np.float64)
    total = counts.sum()
    marg = np.asarray(counts.sum(axis=1)).ravel()
    coo = counts.tocoo()
    with np.errstate(divide="ignore"):
        w = np.log(coo.data * total / (marg[coo.row] * marg[coo.col]))
    keep = w > 0
    out = sparse.csr_matrix((w[keep], (coo.row[keep], coo.col[keep])), shape=counts.shape)
    out.sort_indices()
    return out


def build_cooccurrence_model(corpus, window=DEFAULT_WINDOW, min_count=DEFAULT_MIN_COUNT):
    if window < 1:
        raise ValueError("window must be >= 1")
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    docs = _tokenized(corpus)
    freq = Counter(t for doc in docs for t in doc)
    kept = sorted(t for t, c in freq.items() if c >= min_count)
    if not kept:
        raise ValueError(f"no token occurs at least {min_count} times")
    vocabulary = {t: i for i, t in enumerate(kept)}
    counts = count_cooccurrences(docs, vocabulary, window)
    return CooccurrenceModel(vocabulary, ppmi(counts), window, min_count)


def word_similarity(model, w1, w2):
    """Cosine of the two PPMI vectors, in [0, 1].

    Equal tokens score 1 even when unseen; any other unseen or
    context-free token scores 0.
    """
    if w1 == w2:
        return 1.0
    i = model.vocabulary.get(w1)
    j = model.vocabulary.get(w2)
    if i is None or j is None:
        return 0.0
    ni, nj = model.norms[i], model.norms[j]
    if ni == 0 or nj == 0:
        return 0.0
    dot = model.vectors.getrow(i).multiply(model.vectors.getrow(j)).sum()
    return min(1.0, max(0.0, float(dot) / (ni * nj)))


def similarity_table(model, tokens):
    """Dense word-similarity matrix over ``tokens`` (same rules as word_similarity)."""
    tokens = list(tokens)
    idx = np.array([model.vocabulary.get(t, -1) for t in tokens])
    known = idx >= 0
    T = len(tokens)
    table = np.zeros((T, T))
    if known.any():
        rows = model.vectors[idx[known]]
        norms = model.norms[idx[known]]
        dots = (rows @ rows.T).toarray()
        with np.errstate(divide="ignore", invalid="ignore"):
            cos = dots / np.outer(norms, norms)
        cos[~np.isfinite(cos)] = 0.0
        pos = np.flatnonzero(known)
        table[np.ix_(pos, pos)] = np.clip(cos, 0.0, 1.0)
    np.fill_diagonal(table, 1.0)
    return table


def save_cooccurrence_model(model, fh):
    fh.write(f"{COOC_MAGIC} {FORMAT_VERSION}\n")
    fh.write(f"window {model.window}\n")
    fh.write(f"min_count {model.min_count}\n")
    inv = sorted(model.vocabulary.items(), key=lambda kv: kv[1])
    fh.write(f"vocabulary {len(inv)}\n")
    for token, _ in inv:
        fh.write(token + "\n")
    coo = model.vectors.tocoo()
    fh.write(f"entries {coo.nnz}\n")
    for i, j, w in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
        fh.write(f"{i} {j} {w!r}\n")


def _expect(lines, key, source):
    lineno, line = next(lines, (None, None))
    if line is None:
        raise FormatError(f"unexpected end of file, expected {key!r}", None, source)
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise FormatError(f"expected '{key} <int>'", lineno, source)
    try:
        return int(parts[1])
    except ValueError:
        raise FormatError(f"malformed {key} value", lineno, source) from None


def _check_magic(lines, magic, source):
    lineno, line = next(lines, (1, ""))
    if line.strip() != f"{magic} {FORMAT_VERSION}":
        raise FormatError(f"not a {magic} v{FORMAT_VERSION} file", lineno, source)


def load_cooccurrence_model(fh, source=None):
    lines = ((n, l.rstrip("\n")) for n, l in enumerate(fh, 1))
    _check_magic(lines, COOC_MAGIC, source)
    window = _expect(lines, "window", source)
    min_count = _expect(lines, "min_count", source)
    V = _expect(lines, "vocabulary", source)
    vocabulary = {}
    for i in range(V):
        lineno, token = next(lines, (None, None))
        if token is None:
            raise FormatError("vocabulary truncated", None, source)
        vocabulary[token] = i
    nnz = _expect(lines, "entries", source)
    r = np.empty(nnz, dtype=np.int64)
    c = np.empty(nnz, dtype=np.int64)
    w = np.empty(nnz)
    for e in range(nnz):
        lineno, line = next(lines, (None, None))
        if line is None:
            raise FormatError("entries truncated", None, source)
        try:
            a, b, x = line.split()
            r[e], c[e], w[e] = int(a), int(b), float(x)
        except ValueError:
            raise FormatError(f"malformed entry {line!r}", lineno, source) from None
    if nnz and (r.max() >= V or c.max() >= V or w.min() < 0):
        raise FormatError("entry out of range", None, source)
    vectors = sparse.csr_matrix((w, (r, c)), shape=(V, V))
    vectors.sort_indices()
    return CooccurrenceModel(vocabulary, vectors, window, min_count)


# -- document index --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DocumentIndex:
    doc_count: int
    postings: dict  # token -> sorted tuple of document ids
    _bits: dict = field(default_factory=dict, init=False, repr=False)

    @property
    def N(self):
        return self.doc_count

    def docs(self, token):
        return self.postings.get(token, ())

    def bits(self, token):
        b = self._bits.get(token)
        if b is None:
            b = 0
            for d in self.postings.get(token, ()):
                b |= 1 << d
            self._bits[token] = b
        return b


def build_document_index(corpus):
    docs = _tokenized(corpus)
    postings = {}
    for d, tokens in enumerate(docs):
        for t in set(tokens):
            postings.setdefault(t, []).append(d)
    return DocumentIndex(len(docs), {t: tuple(ids) for t, ids in sorted(postings.items())})


def hit_count(index, terms):
    """Number of documents containing every term; the empty set matches all."""
    terms = set(terms)
    if not terms:
        return index.doc_count
    acc = None
    for t in sorted(terms, key=lambda t: len(index.docs(t))):
        b = index.bits(t)
        acc = b if acc is None else acc & b
        if not acc:
            return 0
    return acc.bit_count()


def save_document_index(index, fh):
    fh.write(f"{INDEX_MAGIC} {FORMAT_VERSION}\n")
    fh.write(f"documents {index.doc_count}\n")
    for token, ids in index.postings.items():
        fh.write(token + "\t" + " ".join(map(str, ids)) + "\n")


def load_document_index(fh, source=None):
    lines = ((n, l.rstrip("\n")) for n, l in enumerate(fh, 1))
    _check_magic(lines, INDEX_MAGIC, source)
    N = _expect(lines, "documents", source)
    if N < 1:
        raise FormatError("document count must be positive", 2, source)
    postings = {}
    for lineno, line in lines:
        if not line:
            continue
        token, _, rest = line.partition("\t")
        try:
            ids = tuple(int(x) for x in rest.split())
        except ValueError:
            raise FormatError("malformed posting list", lineno, source) from None
        if not ids or any(a >= b for a, b in zip(ids, ids[1:])) or ids[0] < 0 or ids[-1] >= N:
            raise FormatError("posting list must be strictly increasing ids below N", lineno, source)
        postings[token] = ids
    return DocumentIndex(N, postings)


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        if isinstance(model, CooccurrenceModel):
            save_cooccurrence_model(model, fh)
        else:
            save_document_index(model, fh)


def load_model(path):
    """Load either backend, dispatching on the magic header."""
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        fh.seek(0)
        if first.startswith(COOC_MAGIC):
            return load_cooccurrence_model(fh, path)
        if first.startswith(INDEX_MAGIC):
            return load_document_index(fh, path)
    raise FormatError("unrecognised model header", 1, path)

