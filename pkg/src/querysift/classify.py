"""Largest-cluster labeling and precision/recall scoring."""
import json
from dataclasses import asdict, dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .clustering import SilhouetteKMedoids
from .errors import FormatError
from .ingest import Label, LabeledDataset

USER, TMN = "U", "T"


@dataclass(frozen=True, eq=False)
class ClassificationResult:
    predicted: np.ndarray  # "U" / "T" per element
    chosen_clusters: frozenset

    @property
    def n(self):
        return len(self.predicted)


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    precision_degenerate: bool = False
    recall_degenerate: bool = False
    chosen_clusters: tuple = ()

    @property
    def n(self):
        return self.tp + self.fp + self.fn + self.tn

    def as_dict(self):
        d = asdict(self)
        d["chosen_clusters"] = list(self.chosen_clusters)
        return d


def classify_largest(clustering):
    """Label every member of the largest cluster(s) as a user query."""
    labels = np.asarray(clustering.assignment)
    sizes = np.bincount(labels, minlength=clustering.k)
    chosen = frozenset(int(c) for c in np.flatnonzero(sizes == sizes.max()))
    predicted = np.where(np.isin(labels, list(chosen)), USER, TMN)
    return ClassificationResult(predicted, chosen)


def _truth_labels(truth):
    if isinstance(truth, LabeledDataset):
        truth = truth.labels
    out = []
    for i, t in enumerate(truth):
        if isinstance(t, str):
            t = Label(t)
        if t is Label.UNKNOWN:
            raise ValueError(f"truth label {i} is unresolved")
        out.append(t)
    return out


def confusion_report(tp, fp, fn, tn, chosen_clusters=()):
    """Precision and recall from raw counts, with the degenerate conventions.

    No positive predictions gives precision 1.0; no true users gives
    recall 0.0.  Both cases are flagged.
    """
    counts = (tp, fp, fn, tn)
    if any(c < 0 for c in counts):
        raise ValueError("confusion counts must be non-negative")
    p_deg = tp + fp == 0
    r_deg = tp + fn == 0
    return EvalReport(
        tp, fp, fn, tn,
        precision=1.0 if p_deg else tp / (tp + fp),
        recall=0.0 if r_deg else tp / (tp + fn),
        precision_degenerate=p_deg,
        recall_degenerate=r_deg,
        chosen_clusters=tuple(sorted(chosen_clusters)),
    )


def evaluate(result, truth):
    labels = _truth_labels(truth)
    if len(labels) != result.n:
        raise ValueError(f"prediction covers {result.n} elements but truth has {len(labels)}")
    tp = fp = fn = tn = 0
    for pred, real in zip(result.predicted, labels):
        if pred == USER:
            if real is Label.USER:
                tp += 1
            else:
                fp += 1
        elif real is Label.USER:
            fn += 1
        else:
            tn += 1
    return confusion_report(tp, fp, fn, tn, result.chosen_clusters)


# -- file formats ----------------------------------------------------------

def write_predictions(result, fh):
    fh.write("chosen_clusters " + " ".join(str(c) for c in sorted(result.chosen_clusters)) + "\n")
    for i, p in enumerate(result.predicted):
        fh.write(f"{i} {p}\n")


def read_predictions(fh, source=None):
    chosen = None
    preds = []
    for lineno, line in enumerate(fh, 1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "chosen_clusters":
            try:
                chosen = frozenset(int(x) for x in parts[1:])
            except ValueError:
                raise FormatError("malformed cluster id", lineno, source) from None
            continue
        if len(parts) != 2 or parts[1] not in (USER, TMN) or parts[0] != str(len(preds)):
            raise FormatError(f"expected '{len(preds)} U|T'", lineno, source)
        preds.append(parts[1])
    if chosen is None:
        raise FormatError("missing 'chosen_clusters' line", None, source)
    return ClassificationResult(np.array(preds), chosen)


def format_report(report, name=None):
    lines = []
    if name:
        lines.append(f"dataset:   {name}")
    lines += [
        f"queries:   {report.n}",
        f"clusters labeled U: {', '.join(map(str, report.chosen_clusters)) or '-'}",
        f"tp={report.tp} fp={report.fp} fn={report.fn} tn={report.tn}",
        f"precision: {report.precision:.3f}" + ("  (no positive predictions)" if report.precision_degenerate else ""),
        f"recall:    {report.recall:.3f}" + ("  (no true user queries)" if report.recall_degenerate else ""),
    ]
    return "\n".join(lines) + "\n"


def write_report_json(report, fh):
    json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
    fh.write("\n")


# -- estimator -------------------------------------------------------------

class LargestClusterAttack(ClusterMixin, BaseEstimator):
    """Cluster a dissimilarity matrix and flag the largest cluster(s) as user queries.

    ``labels_`` holds "U"/"T" per element after ``fit``; the underlying
    clustering is kept in ``clusterer_``.
    """

    def __init__(self, k_min=2, k_max=None):
        self.k_min = k_min
        self.k_max = k_max

    def fit(self, X, y=None):
        self.clusterer_ = SilhouetteKMedoids(self.k_min, self.k_max).fit(X)
        result = classify_largest(self.clusterer_.clustering_)
        self.result_ = result
        self.labels_ = result.predicted
        self.chosen_clusters_ = result.chosen_clusters
        return self

    def score(self, X, y):
        """Precision of the fitted labels against truth labels ``y``."""
        return evaluate(self.fit(X).result_, y).precision
