"""Cluster map: the dissimilarity matrix as a binary PPM (P6) image.

Rows and columns are grouped by cluster, largest cluster at the top left.
Off-diagonal cells are gray (white = identical, black = dissimilarity 1);
the diagonal shows the true class, red for TrackMeNot and blue for user.
"""
import numpy as np

from .ingest import Label, LabeledDataset

RED = (255, 0, 0)
BLUE = (0, 0, 255)


def cluster_order(clustering):
    """Element order for the map: clusters by size descending, then cluster id."""
    labels = np.asarray(clustering.assignment)
    sizes = np.bincount(labels, minlength=clustering.k)
    rank = sorted(range(clustering.k), key=lambda c: (-sizes[c], c))
    return [int(i) for c in rank for i in np.flatnonzero(labels == c)]


def gray_levels(D):
    """round(255 * (1 - d)) with halves rounded up."""
    return np.floor(255.0 * (1.0 - np.asarray(D, dtype=np.float64)) + 0.5).astype(np.uint8)


def render_map(D, clustering, truth, pixel_scale=1, order=None):
    """Return the P6 image bytes; ``pixel_scale`` is the block size per cell."""
    D = np.asarray(D, dtype=np.float64)
    labels = truth.labels if isinstance(truth, LabeledDataset) else [Label(t) if isinstance(t, str) else t for t in truth]
    n = D.shape[0]
    if D.shape != (n, n) or clustering.n != n or len(labels) != n:
        raise ValueError(
            f"dimension mismatch: matrix {D.shape}, clustering {clustering.n}, truth {len(labels)}"
        )
    if pixel_scale < 1:
        raise ValueError("pixel_scale must be >= 1")
    if order is None:
        order = cluster_order(clustering)
    order = np.asarray(order)
    if sorted(order.tolist()) != list(range(n)):
        raise ValueError("order is not a permutation")

    gray = gray_levels(D[np.ix_(order, order)])
    rgb = np.repeat(gray[:, :, None], 3, axis=2)
    for pos, i in enumerate(order):
        label = labels[i]
        if label is Label.TMN:
            rgb[pos, pos] = RED
        elif label is Label.USER:
            rgb[pos, pos] = BLUE
        else:
            raise ValueError(f"record {i} has no resolved label")
    if pixel_scale > 1:
        rgb = np.repeat(np.repeat(rgb, pixel_scale, axis=0), pixel_scale, axis=1)
    side = n * pixel_scale
    return f"P6\n{side} {side}\n255\n".encode("ascii") + rgb.tobytes()


def read_ppm(data):
    """Parse P6 bytes into an (h, w, 3) uint8 array."""
    magic, dims, maxval, rest = data.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("not an 8-bit P6 image")
    w, h = map(int, dims.split())
    return np.frombuffer(rest, dtype=np.uint8).reshape(h, w, 3)
