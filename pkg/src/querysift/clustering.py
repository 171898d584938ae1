"""Partitioning Around Medoids on a precomputed dissimilarity matrix.

BUILD seeding followed by best-improvement SWAP, silhouette widths, and
choice of k by maximum average silhouette.  Every tie goes to the lowest
element index so results are reproducible bit for bit.
"""
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from ._validation import check_dissimilarity, check_n_clusters
from .errors import FormatError

# Costs are sums of at most n entries in [0, 1]; differences below this are
# treated as exact ties so rounding noise cannot trigger a swap or flip a tie.
TIE_TOL = 1e-10

DEFAULT_K_MAX = 25


@dataclass(frozen=True, eq=False)
class Clustering:
    """Result of a PAM run.

    Cluster ``c`` is represented by ``medoids[c]``; medoids are stored in
    ascending element order.
    """

    k: int
    medoids: tuple
    assignment: np.ndarray
    silhouettes: np.ndarray
    avg_silhouette: float
    total_cost: float

    @property
    def n(self):
        return len(self.assignment)

    @property
    def sizes(self):
        return np.bincount(self.assignment, minlength=self.k)

    def members(self, c):
        return np.flatnonzero(self.assignment == c)


def _first_within(values, target):
    """Lowest index whose value is within TIE_TOL of ``target``."""
    return int(np.flatnonzero(np.abs(values - target) <= TIE_TOL)[0])


def pam_build(D, k):
    """Greedy BUILD seeding; returns medoids in the order they were chosen."""
    D = np.asarray(D, dtype=np.float64)
    n = D.shape[0]
    k = check_n_clusters(k, n)

    col_sums = D.sum(axis=0)
    first = _first_within(col_sums, col_sums.min())
    medoids = [first]
    is_medoid = np.zeros(n, dtype=bool)
    is_medoid[first] = True
    near = D[first].copy()

    while len(medoids) < k:
        cands = np.flatnonzero(~is_medoid)
        gains = np.maximum(near[None, :] - D[cands], 0.0).sum(axis=1)
        h = int(cands[_first_within(gains, gains.max())])
        medoids.append(h)
        is_medoid[h] = True
        np.minimum(near, D[h], out=near)
    return medoids


def assign(D, medoids):
    """Nearest-medoid assignment; ties go to the lowest medoid index.

    ``medoids`` must be sorted ascending.  A medoid always lands in its own
    cluster, even when another medoid sits at distance zero from it.
    """
    medoids = np.asarray(medoids)
    sub = D[medoids]
    labels = np.argmin(sub, axis=0)
    labels[medoids] = np.arange(len(medoids))
    return labels


def _cost(D, medoids, labels):
    medoids = np.asarray(medoids)
    return float(D[medoids[labels], np.arange(D.shape[0])].sum())


def _swap_deltas(D, medoids, labels, cands):
    """Change in total cost for every (medoid position, candidate) swap.

    Returns an array of shape (k, len(cands)).
    """
    n = D.shape[0]
    k = len(medoids)
    sub = D[medoids]
    cols = np.arange(n)
    near = sub[labels, cols]
    if k > 1:
        masked = sub.copy()
        masked[labels, cols] = np.inf
        second = masked.min(axis=0)
    else:
        second = np.full(n, np.inf)

    Dh = D[cands]
    base = np.minimum(Dh, near)
    common = (base - near).sum(axis=1)
    extra = np.minimum(Dh, second) - base
    deltas = np.empty((k, len(cands)))
    for i in range(k):
        deltas[i] = common + extra[:, labels == i].sum(axis=1)
    return deltas


def pam(D, k, *, check_input=True):
    """Run BUILD then SWAP until no swap strictly lowers the total cost."""
    D = check_dissimilarity(D) if check_input else np.asarray(D, dtype=np.float64)
    n = D.shape[0]
    k = check_n_clusters(k, n)

    medoids = np.array(sorted(pam_build(D, k)))
    labels = assign(D, medoids)
    while k < n:
        is_medoid = np.zeros(n, dtype=bool)
        is_medoid[medoids] = True
        cands = np.flatnonzero(~is_medoid)
        deltas = _swap_deltas(D, medoids, labels, cands)
        best = deltas.min()
        if best >= -TIE_TOL:
            break
        # row-major scan: lowest medoid first, then lowest candidate
        i, j = np.argwhere(deltas <= best + TIE_TOL)[0]
        medoids[i] = cands[j]
        medoids.sort()
        labels = assign(D, medoids)

    if k >= 2:
        widths = silhouette(D, labels)
    else:
        widths = np.zeros(n)
    return Clustering(
        k=k,
        medoids=tuple(int(m) for m in medoids),
        assignment=labels,
        silhouettes=widths,
        avg_silhouette=float(widths.mean()),
        total_cost=_cost(D, medoids, labels),
    )


def silhouette(D, assignment):
    """Per-element silhouette widths; elements of singleton clusters get 0."""
    D = np.asarray(D, dtype=np.float64)
    labels = np.asarray(assignment)
    n = D.shape[0]
    if labels.shape != (n,):
        raise ValueError("assignment length does not match the matrix")
    if n == 0 or labels.min() < 0:
        raise ValueError("cluster ids must be non-negative")
    k = int(labels.max()) + 1
    sizes = np.bincount(labels, minlength=k)
    if k < 2:
        raise ValueError("silhouette needs at least two clusters")
    if np.any(sizes == 0):
        raise ValueError(f"cluster(s) {np.flatnonzero(sizes == 0).tolist()} are empty")

    sums = np.empty((n, k))
    for c in range(k):
        sums[:, c] = D[:, labels == c].sum(axis=1)
    rows = np.arange(n)
    own_size = sizes[labels]
    with np.errstate(divide="ignore", invalid="ignore"):
        a = sums[rows, labels] / (own_size - 1)
    means = sums / sizes
    means[rows, labels] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    s = np.zeros(n)
    ok = (own_size > 1) & (denom > 0)
    s[ok] = (b[ok] - a[ok]) / denom[ok]
    return s


def default_k_range(n):
    return 2, min(n - 1, DEFAULT_K_MAX)


def select_k(D, k_min=2, k_max=None, *, return_scores=False):
    """PAM for each k in [k_min, k_max]; keep the best average silhouette.

    Ties go to the smaller k.  With ``return_scores`` also returns a dict
    mapping k to its average silhouette.
    """
    D = check_dissimilarity(D)
    n = D.shape[0]
    if k_max is None:
        k_max = default_k_range(n)[1]
    if not 2 <= k_min <= k_max <= n - 1:
        raise ValueError(f"need 2 <= k_min <= k_max <= n-1 = {n - 1}, got [{k_min}, {k_max}]")

    best = None
    scores = {}
    for k in range(k_min, k_max + 1):
        result = pam(D, k, check_input=False)
        scores[k] = result.avg_silhouette
        if best is None or result.avg_silhouette > best.avg_silhouette:
            best = result
    if return_scores:
        return best, scores
    return best


# -- file format -----------------------------------------------------------

def write_clustering(clustering, fh):
    fh.write(f"k {clustering.k}\n")
    fh.write(f"avg_silhouette {clustering.avg_silhouette!r}\n")
    fh.write("medoids " + " ".join(str(m) for m in clustering.medoids) + "\n")
    fh.write(f"total_cost {clustering.total_cost!r}\n")
    for i, (c, s) in enumerate(zip(clustering.assignment, clustering.silhouettes)):
        fh.write(f"{i} {int(c)} {float(s)!r}\n")


def read_clustering(fh, source=None):
    header = {}
    rows = []
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] in ("k", "avg_silhouette", "medoids", "total_cost"):
            if rows:
                raise FormatError(f"header field {parts[0]!r} after element lines", lineno, source)
            header[parts[0]] = (parts[1:], lineno)
            continue
        if len(parts) != 3:
            raise FormatError("expected 'index cluster_id silhouette'", lineno, source)
        try:
            idx, cid, s = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise FormatError(f"malformed element line {line!r}", lineno, source) from None
        if idx != len(rows):
            raise FormatError(f"element index {idx} out of sequence", lineno, source)
        rows.append((cid, s))

    for key in ("k", "avg_silhouette"):
        if key not in header:
            raise FormatError(f"missing header line {key!r}", None, source)
    try:
        k = int(header["k"][0][0])
        avg = float(header["avg_silhouette"][0][0])
        medoids = tuple(int(x) for x in header["medoids"][0]) if "medoids" in header else ()
        cost = float(header["total_cost"][0][0]) if "total_cost" in header else float("nan")
    except (ValueError, IndexError):
        raise FormatError("malformed header", None, source) from None
    if not rows:
        raise FormatError("no element lines", None, source)
    labels = np.array([r[0] for r in rows])
    if labels.min() < 0 or labels.max() >= k:
        raise FormatError(f"cluster ids must lie in [0, {k})", None, source)
    return Clustering(
        k=k,
        medoids=medoids,
        assignment=labels,
        silhouettes=np.array([r[1] for r in rows]),
        avg_silhouette=avg,
        total_cost=cost,
    )


# -- estimators ------------------------------------------------------------

class _MedoidsMixin:
    def _store(self, result, D):
        self.clustering_ = result
        self.n_clusters_ = result.k
        self.medoid_indices_ = np.array(result.medoids)
        self.labels_ = result.assignment
        self.silhouette_samples_ = result.silhouettes
        self.silhouette_score_ = result.avg_silhouette
        self.inertia_ = result.total_cost
        self._fit_D = D

    def predict(self, D_new):
        """Nearest fitted medoid for new rows.

        ``D_new`` has shape (n_new, n_fit): dissimilarities from each new
        element to every element the model was fitted on.
        """
        D_new = np.atleast_2d(np.asarray(D_new, dtype=np.float64))
        return np.argmin(D_new[:, self.medoid_indices_], axis=1)


class KMedoids(_MedoidsMixin, ClusterMixin, BaseEstimator):
    """PAM with a fixed number of clusters on a precomputed matrix.

    >>> import numpy as np
    >>> D = np.array([[0, .1, 1, 1], [.1, 0, 1, 1], [1, 1, 0, .1], [1, 1, .1, 0]])
    >>> KMedoids(n_clusters=2).fit(D).labels_.tolist()
    [0, 0, 1, 1]
    """

    def __init__(self, n_clusters=2):
        self.n_clusters = n_clusters

    def fit(self, X, y=None):
        D = check_dissimilarity(X)
        self._store(pam(D, self.n_clusters, check_input=False), D)
        return self


class SilhouetteKMedoids(_MedoidsMixin, ClusterMixin, BaseEstimator):
    """PAM with k chosen by maximum average silhouette over [k_min, k_max].

    ``k_max=None`` means ``min(n - 1, 25)``.  After fitting, ``scores_`` maps
    each tried k to its average silhouette.
    """

    def __init__(self, k_min=2, k_max=None):
        self.k_min = k_min
        self.k_max = k_max

    def fit(self, X, y=None):
        D = check_dissimilarity(X)
        best, scores = select_k(D, self.k_min, self.k_max, return_scores=True)
        self.scores_ = scores
        self._store(best, D)
        return self
