import numpy as np
import pytest

import oracles
from newsprominence import _pykernels, kernels


def _random_counts(rng, rows, vocab):
    counts = rng.integers(0, 4, size=(rows, vocab)).astype(np.float64)
    counts[rng.random(counts.shape) < 0.6] = 0.0
    return counts


def _random_stochastic(rng, s):
    w = rng.random((s, s))
    np.fill_diagonal(w, 0.0)
    return w / w.sum(axis=1, keepdims=True)


def test_backend_flag_names_loaded_module():
    assert kernels.BACKEND in kernels.backends()
    assert kernels.power_iterate is kernels.backends()[kernels.BACKEND].power_iterate


def test_js_distance_matches_entropy_oracle(backend):
    rng = np.random.default_rng(1)
    for _ in range(100):
        p, q = rng.dirichlet(np.ones(7)), rng.dirichlet(np.ones(7))
        assert backend.js_distance(p, q) == pytest.approx(oracles.js_distance(p, q), abs=1e-12)


def test_bow_matrix_matches_pairwise_oracle(backend):
    rng = np.random.default_rng(2)
    counts = _random_counts(rng, 8, 12)
    counts[3] = 0.0
    sim = backend.bow_jsd_matrix(counts)
    for i in range(8):
        for j in range(8):
            if i == j or counts[i].sum() == 0 or counts[j].sum() == 0:
                expected = 0.0
            else:
                expected = 1 - oracles.js_distance(counts[i] / counts[i].sum(),
                                                   counts[j] / counts[j].sum())
            assert sim[i, j] == pytest.approx(expected, abs=1e-12)
    assert np.array_equal(sim, sim.T)


def test_disjoint_rows_have_exactly_zero_similarity(backend):
    counts = np.array([[3.0, 1.0, 7.0, 0.0, 0.0], [0.0, 0.0, 0.0, 5.0, 3.0]])
    assert backend.bow_jsd_cross(counts[:1], counts[1:])[0, 0] == 0.0


def test_cross_requires_shared_vocabulary(backend):
    with pytest.raises(ValueError):
        backend.bow_jsd_cross(np.ones((2, 3)), np.ones((2, 4)))


def test_power_iterate_matches_dense_oracle(backend):
    rng = np.random.default_rng(3)
    for s in (2, 5, 13):
        w = _random_stochastic(rng, s)
        scores, iterations, converged = backend.power_iterate(w, 0.85, 100, 1e-6)
        expected = oracles.dense_power_iteration(w.tolist(), 0.85, 100, 1e-6)
        assert converged and 1 <= iterations <= 100
        assert np.max(np.abs(np.asarray(scores) - expected)) < 1e-12


def test_power_iterate_reports_non_convergence(backend):
    w = _random_stochastic(np.random.default_rng(4), 6)
    _, iterations, converged = backend.power_iterate(w, 0.85, 2, 1e-15)
    assert iterations == 2 and not converged


def test_ks_statistic_matches_ecdf_with_ties(backend):
    a = np.sort(np.array([1.0, 1.0, 2.0, 3.0, 3.0, 3.0]))
    b = np.sort(np.array([1.0, 2.0, 2.0, 4.0]))
    assert backend.ks_statistic(a, b) == oracles.ecdf_ks(a, b)


@pytest.mark.skipif("cython" not in kernels.backends(), reason="extension not compiled")
def test_cython_and_python_backends_agree():
    c = kernels.backends()["cython"]
    rng = np.random.default_rng(5)
    for _ in range(20):
        counts = _random_counts(rng, 9, 15)
        other = _random_counts(rng, 4, 15)
        assert np.max(np.abs(c.bow_jsd_matrix(counts) - _pykernels.bow_jsd_matrix(counts))) < 1e-12
        assert np.max(np.abs(c.bow_jsd_cross(counts, other)
                             - _pykernels.bow_jsd_cross(counts, other))) < 1e-12
        w = _random_stochastic(rng, 9)
        pc, ic, cc = c.power_iterate(w, 0.85, 100, 1e-6)
        pp, ip, cp = _pykernels.power_iterate(w, 0.85, 100, 1e-6)
        assert np.max(np.abs(np.asarray(pc) - pp)) < 1e-12 and ic == ip and cc == cp
        a, b = np.sort(rng.normal(size=30)), np.sort(rng.normal(size=17))
        assert c.ks_statistic(a, b) == _pykernels.ks_statistic(a, b)


def test_benchmark_workloads_run_on_every_backend():
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    for call in bench.workloads(np.random.default_rng(1)).values():
        results = [call(impl) for impl in kernels.backends().values()]
        assert len(results) == len(kernels.backends())
