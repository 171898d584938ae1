from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from querysift.ingest import Label, LabeledDataset, QueryRecord
from querysift.render import BLUE, RED, cluster_order, gray_levels, read_ppm, render_map

from oracles import make_clustering, random_dissimilarity

GOLDEN = Path(__file__).parent / "data" / "cluster_map_5x5.ppm"

# dyadic entries so every gray level is exact: 255 * (1 - d) rounded half up
FIXTURE = np.array(
    [
        [0, 0.2, 0.5, 1.0, 0.75],
        [0.2, 0, 0.125, 0.375, 0.625],
        [0.5, 0.125, 0, 0.875, 0.0625],
        [1.0, 0.375, 0.875, 0, 0.25],
        [0.75, 0.625, 0.0625, 0.25, 0],
    ]
)
FIXTURE_ASSIGNMENT = [1, 0, 1, 0, 2]
FIXTURE_TRUTH = "UTUTT"

# hand-audited: order is [1, 3, 0, 2, 4] (cluster 0 then 1 then 2)
R, B = "R", "B"
EXPECTED = [
    [R, 159, 204, 223, 96],
    [159, R, 0, 32, 191],
    [204, 0, B, 128, 64],
    [223, 32, 128, B, 239],
    [96, 191, 64, 239, R],
]


def test_cluster_order_examples():
    assert cluster_order(make_clustering([1, 0, 1, 0, 1])) == [0, 2, 4, 1, 3]
    assert cluster_order(make_clustering([1, 0, 1, 1, 0])) == [0, 2, 3, 1, 4]
    assert cluster_order(make_clustering([2, 0, 1])) == [1, 2, 0]


def test_cluster_order_singletons_tie():
    # cluster 1 = {0, 2, 4}; clusters 0 and 2 are singletons, lower id first
    assert cluster_order(make_clustering([1, 2, 1, 0, 1])) == [0, 2, 4, 3, 1]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=25))
def test_cluster_order_resort_oracle(labels):
    _, labels = np.unique(labels, return_inverse=True)
    c = make_clustering(labels)
    order = cluster_order(c)
    assert sorted(order) == list(range(len(labels)))
    sizes = np.bincount(labels)
    expect = sorted(range(len(labels)), key=lambda i: (-sizes[labels[i]], labels[i], i))
    assert order == expect


def test_one_by_one_blue():
    img = render_map(np.zeros((1, 1)), make_clustering([0]), [Label.USER], pixel_scale=3)
    px = read_ppm(img)
    assert px.shape == (3, 3, 3)
    assert np.all(px == BLUE)


def test_two_by_two_black():
    D = np.array([[0, 1.0], [1.0, 0]])
    px = read_ppm(render_map(D, make_clustering([0, 1]), "TU"))
    assert px[0, 1].tolist() == [0, 0, 0] and px[1, 0].tolist() == [0, 0, 0]
    assert tuple(px[0, 0]) == RED and tuple(px[1, 1]) == BLUE


def test_golden_bytes():
    img = render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), FIXTURE_TRUTH)
    assert img == GOLDEN.read_bytes()


def test_golden_hand_audit():
    data = GOLDEN.read_bytes()
    assert data.startswith(b"P6\n5 5\n255\n") and len(data) == 11 + 75
    px = read_ppm(data)
    for i, row in enumerate(EXPECTED):
        for j, v in enumerate(row):
            want = RED if v == R else BLUE if v == B else (v, v, v)
            assert tuple(px[i, j]) == want, (i, j)


def test_pixel_scale_blocks():
    small = read_ppm(render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), FIXTURE_TRUTH))
    big = read_ppm(render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), FIXTURE_TRUTH, pixel_scale=4))
    assert big.shape == (20, 20, 3)
    assert np.array_equal(big[::4, ::4], small)


def test_dataset_truth_and_errors():
    ds = LabeledDataset([QueryRecord(i, "q", Label(x)) for i, x in enumerate(FIXTURE_TRUTH)])
    img = render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), ds)
    assert img == GOLDEN.read_bytes()
    with pytest.raises(ValueError):
        render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), "UTU")
    with pytest.raises(ValueError):
        render_map(FIXTURE, make_clustering([0, 0, 1, 1]), FIXTURE_TRUTH)
    with pytest.raises(ValueError):
        render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), "UTU?T")
    with pytest.raises(ValueError):
        render_map(FIXTURE, make_clustering(FIXTURE_ASSIGNMENT), FIXTURE_TRUTH, pixel_scale=0)


def test_gray_monotone_random():
    rng = np.random.default_rng(8)
    for _ in range(20):
        D = random_dissimilarity(rng, 12)
        g = gray_levels(D).astype(int).ravel()
        d = D.ravel()
        idx = np.argsort(d, kind="stable")
        assert np.all(np.diff(g[idx]) <= 0)
    assert gray_levels(np.array([0.0, 1.0])).tolist() == [255, 0]


def test_diagonal_partitions_by_label():
    rng = np.random.default_rng(2)
    D = random_dissimilarity(rng, 9)
    truth = "UTTUTUUTT"
    c = make_clustering([0, 1, 2, 0, 1, 2, 0, 1, 2])
    px = read_ppm(render_map(D, c, truth))
    order = cluster_order(c)
    for pos, i in enumerate(order):
        assert tuple(px[pos, pos]) == (BLUE if truth[i] == "U" else RED)
