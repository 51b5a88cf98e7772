"""Shift, trend, scale and permutation behaviour of both estimators, and run determinism."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multiwhittle import FivarmaModel, fivarma, mfw, mww, replication_rng, scaling_filter
from multiwhittle.bench import BenchConfig, run_benchmark

seeds = st.integers(0, 2**31 - 1)


def _path(seed, d=(0.2, 0.4, 0.1), n=512):
    p = len(d)
    sigma = np.full((p, p), 0.5)
    np.fill_diagonal(sigma, 1.0)
    return fivarma(n, FivarmaModel(d, sigma), replication_rng(seed))[0]


@settings(max_examples=15, deadline=None)
@given(seeds, st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=3))
def test_constants_do_not_move_estimates(seed, shift):
    x = _path(seed)
    for est in (mww, mfw):
        a, b = est(x), est(x + np.array(shift))
        assert np.max(np.abs(a.d - b.d)) < 1e-6
        np.testing.assert_allclose(b.cov, a.cov, rtol=1e-6, atol=1e-9)


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([2, 4, 6, 8]), st.floats(-50, 50))
def test_polynomial_trends_do_not_move_mww(seed, order, amp):
    x = _path(seed)
    filt = scaling_filter("Daubechies", order)
    t = np.linspace(-1.0, 1.0, x.shape[0])
    M = order // 2
    trend = amp * np.column_stack([t ** (M - 1), (0.5 - t) ** (M - 1) + 3.0, np.ones_like(t)])
    a, b = mww(x, filt), mww(x + trend, filt)
    assert np.max(np.abs(a.d - b.d)) < 1e-6


@settings(max_examples=15, deadline=None)
@given(seeds, st.floats(1e-3, 1e3))
def test_scale_equivariance(seed, c):
    x = _path(seed)
    for est in (mww, mfw):
        a, b = est(x), est(c * x)
        assert np.max(np.abs(a.d - b.d)) < 1e-6
        np.testing.assert_allclose(b.cov, c**2 * a.cov, rtol=1e-5)


@settings(max_examples=15, deadline=None)
@given(seeds, st.permutations([0, 1, 2]))
def test_permutation_equivariance(seed, perm):
    x = _path(seed)
    for est in (mww, mfw):
        a, b = est(x), est(x[:, perm])
        assert np.max(np.abs(a.d[perm] - b.d)) < 1e-6
        np.testing.assert_allclose(b.cov, a.cov[np.ix_(perm, perm)], rtol=1e-5, atol=1e-9)


@pytest.mark.parametrize("workers", [2, 4])
def test_benchmark_independent_of_worker_count(workers):
    base = BenchConfig(d=(0.2, 0.4), reps=16, seed=9, methods=("mww", "mfw"))
    serial = run_benchmark(base)
    pooled = run_benchmark(BenchConfig(d=(0.2, 0.4), reps=16, seed=9, methods=("mww", "mfw"), workers=workers))
    for method in ("mww", "mfw"):
        np.testing.assert_array_equal(serial.d[method], pooled.d[method])
        np.testing.assert_array_equal(serial.cov[method], pooled.cov[method])


def test_replication_streams_are_isolated():
    # replication r does not depend on how many replications precede it
    a = run_benchmark(BenchConfig(d=(0.3,), reps=10, seed=4))
    b = run_benchmark(BenchConfig(d=(0.3,), reps=12, seed=4))
    np.testing.assert_array_equal(a.d["mww"], b.d["mww"][:10])
