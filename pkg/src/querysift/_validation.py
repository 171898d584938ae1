"""Input checks shared by the estimators and the stage functions."""
import numpy as np

from .text import tokenize


def check_dissimilarity(D, *, atol=1e-12):
    """Return ``D`` as a float64 square array after checking the matrix contract.

    Symmetric, zero diagonal, every entry in [0, 1].
    """
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"dissimilarity matrix must be square, got shape {D.shape}")
    if D.shape[0] == 0:
        raise ValueError("dissimilarity matrix is empty")
    if not np.all(np.isfinite(D)):
        raise ValueError("dissimilarity matrix contains non-finite values")
    if np.any(np.abs(np.diag(D)) > atol):
        raise ValueError("dissimilarity matrix must have a zero diagonal")
    if not np.allclose(D, D.T, rtol=0.0, atol=atol):
        raise ValueError("dissimilarity matrix must be symmetric")
    if D.min() < -atol or D.max() > 1.0 + atol:
        raise ValueError("dissimilarity entries must lie in [0, 1]")
    return D


def check_n_clusters(k, n):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"number of clusters must be an integer, got {k!r}")
    if not 1 <= k <= n:
        raise ValueError(f"number of clusters must be in [1, {n}], got {k}")
    return int(k)


def check_queries(X):
    """Coerce an iterable of strings (or Query objects) to a list of Query."""
    from .similarity import Query

    out = []
    for i, q in enumerate(X):
        if isinstance(q, Query):
            out.append(q)
            continue
        if not isinstance(q, str):
            raise TypeError(f"query {i} is not a string: {q!r}")
        tokens = tokenize(q)
        if not tokens:
            raise ValueError(f"query {i} has no tokens: {q!r}")
        out.append(Query(q, tuple(tokens)))
    if not out:
        raise ValueError("no queries given")
    return out
