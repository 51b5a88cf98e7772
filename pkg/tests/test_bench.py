import numpy as np
import pytest

from multiwhittle.bench import SUMMARY_FIELDS, BenchConfig, config_dict, run_benchmark, summarize


def test_summary_rows_and_formulae():
    res = run_benchmark(BenchConfig(d=(0.2, 0.4), reps=12, seed=1, methods=("mww", "mfw"), m=57))
    rows = summarize(res)
    params = [r["parameter"] for r in rows if r["method"] == "mww"]
    assert params == ["d1", "d2", "omega11", "omega12", "omega22", "correlation"]
    for r in rows:
        assert set(r) == set(SUMMARY_FIELDS)
        assert r["rmse"] == pytest.approx(np.hypot(r["bias"], r["std"]), rel=1e-12)
    d1 = rows[0]
    est = res.d["mww"][:, 0]
    assert d1["bias"] == pytest.approx(est.mean() - 0.2, abs=1e-15)
    assert d1["std"] == pytest.approx(est.std(), rel=1e-12)
    uni = res.d_univariate["mww"][:, 0]
    assert d1["ratio_mu"] == pytest.approx(d1["rmse"] / np.sqrt(np.mean((uni - 0.2) ** 2)), rel=1e-10)
    mfw_d1 = next(r for r in rows if r["method"] == "mfw" and r["parameter"] == "d1")
    assert d1["ratio_wf"] == pytest.approx(d1["rmse"] / mfw_d1["rmse"], rel=1e-12)
    assert mfw_d1["ratio_wf"] is None


def test_differenced_truth():
    cfg = BenchConfig(d=(0.2, 1.2), reps=10, difference=1)
    np.testing.assert_allclose(cfg.true_d(), [0.2, 0.2])
    res = run_benchmark(cfg)
    assert res.d["mww"].shape == (10, 2)


def test_explicit_sigma_and_serialisation():
    cfg = BenchConfig(d=(0.1, 0.3), reps=10, sigma=[[2.0, 0.5], [0.5, 1.0]], ar=[np.diag([0.3, -0.2])])
    res = run_benchmark(cfg)
    assert res.true_cov[0, 0] == pytest.approx(2.0 / 1.3**2)
    out = config_dict(cfg)
    assert out["sigma"] == [[2.0, 0.5], [0.5, 1.0]] and out["ar"] == [[[0.3, 0.0], [0.0, -0.2]]]


def test_rejects_bad_configuration():
    with pytest.raises(ValueError):
        run_benchmark(BenchConfig(d=(0.2,), reps=0))
    with pytest.raises(ValueError):
        run_benchmark(BenchConfig(d=(0.2,), reps=10, methods=("gph",)))
