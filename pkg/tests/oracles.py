"""Slow, direct reference implementations used only by the tests.

None of these call into the package; make_clustering only builds a result object.
"""
import itertools
import math
from collections import Counter, defaultdict

import numpy as np

from querysift.clustering import Clustering


def ppmi_reference(docs, window, min_count):
    """Dict-of-dicts PPMI weights from plain counting and math.log."""
    freq = Counter(t for d in docs for t in d)
    keep = {t for t, c in freq.items() if c >= min_count}
    pair = Counter()
    for d in docs:
        for i, w in enumerate(d):
            for j in range(i + 1, min(len(d), i + window + 1)):
                c = d[j]
                if w in keep and c in keep:
                    pair[(w, c)] += 1
                    pair[(c, w)] += 1
    total = sum(pair.values())
    marg = Counter()
    for (w, _), n in pair.items():
        marg[w] += n
    out = defaultdict(dict)
    for (w, c), n in pair.items():
        v = math.log(n * total / (marg[w] * marg[c]))
        if v > 0:
            out[w][c] = v
    return keep, out


def cosine_reference(vecs, a, b):
    if a == b:
        return 1.0
    va, vb = vecs.get(a, {}), vecs.get(b, {})
    na = math.sqrt(sum(x * x for x in va.values()))
    nb = math.sqrt(sum(x * x for x in vb.values()))
    if na == 0 or nb == 0:
        return 0.0
    dot = sum(v * vb.get(k, 0.0) for k, v in va.items())
    return min(1.0, max(0.0, dot / (na * nb)))


def hit_count_scan(docs, terms):
    terms = set(terms)
    return sum(1 for d in docs if terms <= set(d))


def ngd_reference(N, f1, f2, f12):
    if f1 == 0 or f2 == 0 or f12 == 0:
        return 1.0
    num = max(math.log(f1), math.log(f2)) - math.log(f12)
    den = math.log(N) - min(math.log(f1), math.log(f2))
    if den == 0:
        return 0.0
    return min(1.0, max(0.0, num / den))


def directed_reference(sim, q1, q2):
    """Exhaustive max-then-mean over all word pairs."""
    best = []
    for w in q1:
        scores = [sim(w, v) for v in q2]
        best.append(max(scores))
    return math.fsum(best) / len(q1)


def brute_force_cost(D, k):
    """Optimal k-medoid cost by enumerating every medoid subset."""
    n = len(D)
    best = math.inf
    for meds in itertools.combinations(range(n), k):
        cost = sum(min(D[i][m] for m in meds) for i in range(n))
        best = min(best, cost)
    return best


def silhouette_reference(D, labels):
    n = len(D)
    labels = list(labels)
    clusters = sorted(set(labels))
    out = []
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            out.append(0.0)
            continue
        a = sum(D[i][j] for j in own) / len(own)
        b = min(
            sum(D[i][j] for j in range(n) if labels[j] == c) / labels.count(c)
            for c in clusters
            if c != labels[i]
        )
        m = max(a, b)
        out.append(0.0 if m == 0 else (b - a) / m)
    return out


def random_dissimilarity(rng, n):
    A = rng.random((n, n))
    D = np.triu(A, 1)
    D = D + D.T
    return D


def make_clustering(assignment, k=None):
    assignment = np.asarray(assignment)
    k = int(assignment.max()) + 1 if k is None else k
    medoids = tuple(int(np.flatnonzero(assignment == c)[0]) for c in range(k))
    return Clustering(k, medoids, assignment, np.zeros(len(assignment)), 0.0, 0.0)
