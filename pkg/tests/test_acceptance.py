"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Tolerances and runtime budgets are the ones the criteria state.  The
summary lines are printed at the end of the pytest run.
"""
import math
import time
from pathlib import Path

import numpy as np
import pytest

from querysift import cli, datasets
from querysift.classify import classify_largest, confusion_report, evaluate
from querysift.clustering import pam, select_k, silhouette
from querysift.corpus import build_cooccurrence_model, build_document_index, hit_count
from querysift.similarity import DiscoLike, Query, build_matrix, ngd, phrase_sim_directed
from querysift.simulator import SimulatorConfig, UserSession, simulate
from querysift.render import gray_levels, render_map

import oracles

GOLDEN = Path(__file__).parent / "data" / "cluster_map_5x5.ppm"


@pytest.fixture(scope="module")
def bundled_model():
    return build_cooccurrence_model(datasets.load_corpus())


@pytest.fixture(scope="module")
def pool():
    return datasets.load_topic_pool()


def test_criterion_01_evaluation_arithmetic(acceptance):
    t0 = time.perf_counter()
    pure = confusion_report(tp=5, fp=0, fn=34 - 5, tn=45)
    mixed = confusion_report(tp=13, fp=2, fn=0, tn=0)
    elapsed = time.perf_counter() - t0
    ok = (
        pure.precision == 1.0
        and abs(pure.recall - 0.147) <= 0.001
        and abs(mixed.precision - 0.867) <= 0.001
        and elapsed < 1.0
    )
    acceptance(1, ok, f"precision {pure.precision:.3f} recall {pure.recall:.4f}; precision {mixed.precision:.4f}; {elapsed:.3f}s")
    assert ok


def test_criterion_02_pam_matches_brute_force(acceptance):
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    misses = []
    for trial in range(100):
        n = int(rng.integers(4, 9))
        k = int(rng.integers(2, 4))
        D = oracles.random_dissimilarity(rng, n)
        got = pam(D, k).total_cost
        best = oracles.brute_force_cost(D, k)
        if abs(got - best) > 1e-9:
            misses.append((trial, n, k, round(got - best, 4)))
    elapsed = time.perf_counter() - t0
    ok = not misses and elapsed < 10
    acceptance(2, ok, f"{100 - len(misses)}/100 optimal, misses (trial, n, k, excess) {misses}; {elapsed:.2f}s")
    assert ok


def test_criterion_03_silhouette_formula(acceptance):
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    in_range = True
    singleton_ok = True
    for _ in range(50):
        n = int(rng.integers(3, 12))
        k = int(rng.integers(2, n + 1))
        labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
        rng.shuffle(labels)
        D = oracles.random_dissimilarity(rng, n)
        s = silhouette(D, labels)
        ref = np.array(oracles.silhouette_reference(D, labels))
        worst = max(worst, float(np.abs(s - ref).max()))
        in_range &= bool(np.all((s >= -1) & (s <= 1)))
        sizes = np.bincount(labels)
        singleton_ok &= bool(np.all(s[sizes[labels] == 1] == 0))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and in_range and singleton_ok and elapsed < 5
    acceptance(3, ok, f"max deviation {worst:.1e}, range {in_range}, singleton {singleton_ok}; {elapsed:.2f}s")
    assert ok


def test_criterion_04_normalized_distance(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    vocab = list("abcdefghij")
    self_zero = True
    scans_ok = True
    for _ in range(50):
        n_docs = int(rng.integers(2, 51))
        docs = [list(rng.choice(vocab, size=int(rng.integers(1, 6)))) for _ in range(n_docs)]
        idx = build_document_index(docs)
        for _ in range(10):
            terms = set(rng.choice(vocab + ["zz"], size=int(rng.integers(0, 4)), replace=False))
            scans_ok &= hit_count(idx, terms) == oracles.hit_count_scan(docs, terms)
        for w in vocab:
            if hit_count(idx, {w}) > 0:
                self_zero &= ngd(idx, Query(w, (w,)), Query(w, (w,))) == 0.0
    fixture = [["a", "b"]] * 2 + [["a"]] * 6 + [["b"]] * 2 + [["c"]] * 6
    fixed = ngd(build_document_index(fixture), Query("a", ("a",)), Query("b", ("b",)))
    elapsed = time.perf_counter() - t0
    ok = self_zero and scans_ok and fixed == 1.0 and elapsed < 5
    acceptance(4, ok, f"ngd(q,q)=0 {self_zero}, fixture {fixed!r}, hit counts match scans {scans_ok}; {elapsed:.2f}s")
    assert ok


def test_criterion_05_phrase_aggregation(acceptance):
    rng = np.random.default_rng(3)
    vocab = [f"w{i}" for i in range(12)]
    M = rng.random((12, 12))
    pos = {w: i for i, w in enumerate(vocab)}

    def backend(a, b):
        return 1.0 if a == b else float(M[pos[a], pos[b]])

    worst = 0.0
    in_range = True
    for _ in range(200):
        q1 = tuple(rng.choice(vocab, size=int(rng.integers(1, 6))))
        q2 = tuple(rng.choice(vocab, size=int(rng.integers(1, 6))))
        got = phrase_sim_directed(backend, Query(" ".join(q1), q1), Query(" ".join(q2), q2))
        worst = max(worst, abs(got - oracles.directed_reference(backend, q1, q2)))
        in_range &= 0.0 <= got <= 1.0
    matrices_ok = True
    for _ in range(30):
        texts = [" ".join(rng.choice(vocab, size=int(rng.integers(1, 5)))) for _ in range(int(rng.integers(1, 15)))]
        D = build_matrix(texts, DiscoLike(backend)).values
        matrices_ok &= bool(np.array_equal(D, D.T) and np.all(np.diag(D) == 0) and D.min() >= 0 and D.max() <= 1)
    ok = worst <= 1e-12 and in_range and matrices_ok
    acceptance(5, ok, f"max deviation {worst:.1e}, range {in_range}, matrix invariants {matrices_ok}")
    assert ok


def _window_run(pool, model, seed, duration):
    rng = np.random.default_rng(seed + 1000)
    t1, t2 = rng.choice(len(pool), size=2, replace=False)
    sessions = (UserSession(300.0, int(t1), 10, 120.0), UserSession(duration / 2, int(t2), 10, 120.0))
    cfg = SimulatorConfig(seed=seed, duration=duration, burst_size_range=(1, 3), user_sessions=sessions)
    ds = simulate(pool, cfg)
    D = build_matrix(ds.queries, DiscoLike(model)).values
    report = evaluate(classify_largest(select_k(D)), ds)
    return len(ds), report.precision


def test_criterion_06_window_trend(acceptance, pool, bundled_model):
    t0 = time.perf_counter()
    small = [_window_run(pool, bundled_model, s, 2 * 3600.0) for s in range(20)]
    large = [_window_run(pool, bundled_model, s, 54 * 3600.0) for s in range(20)]
    elapsed = time.perf_counter() - t0
    p_small = float(np.mean([p for _, p in small]))
    p_large = float(np.mean([p for _, p in large]))
    n_small = float(np.mean([n for n, _ in small]))
    n_large = float(np.mean([n for n, _ in large]))
    ok = p_small >= 0.8 and p_large < p_small and elapsed < 300
    acceptance(
        6,
        ok,
        f"small window (~{n_small:.0f} records) mean precision {p_small:.3f}; "
        f"large window (~{n_large:.0f} records) {p_large:.3f}; {elapsed:.0f}s",
    )
    assert ok


def test_criterion_07_pipeline_determinism(acceptance, tmp_path):
    args = ["--seed", "7", "--duration", "7200", "--burst-range", "1:3"]
    codes = [cli.main(["pipeline", "--outdir", str(tmp_path / d)] + args) for d in ("a", "b")]
    same = {
        name: (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        for name in ("matrix.txt", "clustering.txt", "report.json", "report.txt", "map.ppm")
    }
    ok = codes == [0, 0] and all(same.values())
    acceptance(7, ok, f"exit codes {codes}, identical {same}")
    assert ok


def test_criterion_08_simulator_statistics(acceptance, pool):
    hours = 1200
    cfg = SimulatorConfig(seed=2024, duration=hours * 3600.0)
    ds, trace = simulate(pool, cfg, return_trace=True)
    t = np.array([r.timestamp for r in ds.records], dtype=float) - cfg.start_time
    mean_gap = t[-1] / len(t)
    expect = 3600.0 / cfg.rate_per_hour
    sizes = trace["list_sizes"]
    in_band = min(sizes) >= 100 and max(sizes) <= 200
    ok = abs(mean_gap - expect) / expect <= 0.05 and in_band
    acceptance(
        8,
        ok,
        f"{hours} h, mean gap {mean_gap:.1f}s vs {expect:.0f}s ({100 * (mean_gap / expect - 1):+.2f}%), "
        f"list size range [{min(sizes)}, {max(sizes)}]",
    )
    assert ok


def test_criterion_09_render_golden(acceptance):
    D = np.array(
        [
            [0, 0.2, 0.5, 1.0, 0.75],
            [0.2, 0, 0.125, 0.375, 0.625],
            [0.5, 0.125, 0, 0.875, 0.0625],
            [1.0, 0.375, 0.875, 0, 0.25],
            [0.75, 0.625, 0.0625, 0.25, 0],
        ]
    )
    img = render_map(D, oracles.make_clustering([1, 0, 1, 0, 2]), "UTUTT")
    golden = img == GOLDEN.read_bytes()
    rng = np.random.default_rng(4)
    monotone = True
    for _ in range(50):
        d = np.sort(rng.random(200))
        monotone &= bool(np.all(np.diff(gray_levels(d).astype(int)) <= 0))
    ok = golden and monotone
    acceptance(9, ok, f"golden byte-exact {golden}, gray monotone {monotone}")
    assert ok


def test_criterion_10_scale(acceptance, pool, bundled_model):
    cfg = SimulatorConfig(
        seed=99,
        duration=60 * 3600.0,
        burst_size_range=(1, 3),
        user_sessions=(UserSession(300.0, 5, 10, 120.0), UserSession(100000.0, 40, 10, 120.0)),
    )
    ds = simulate(pool, cfg)[:600]
    t0 = time.perf_counter()
    D = build_matrix(ds.queries, DiscoLike(bundled_model)).values
    c = select_k(D)
    elapsed = time.perf_counter() - t0
    ok = len(ds) == 600 and elapsed < 60
    acceptance(10, ok, f"n={len(ds)}, k={c.k} chosen from [2, 25], {elapsed:.1f}s")
    assert ok
