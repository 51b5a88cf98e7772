"""Monte Carlo harness: bias, std and RMSE of the estimators on simulated FIVARMA data.

Replication ``r`` draws from ``replication_rng(seed, r)``, so results do not
depend on how replications are spread over worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from functools import partial

import numpy as np

from .diagnostics import differentiate_component
from .estimate import cov_to_corr
from .fourier import mfw
from .sim import FivarmaModel, fivarma, long_run_cov, replication_rng
from .wavelet import scaling_filter
from .wavelet_whittle import mww

__all__ = ["BenchConfig", "BenchResult", "run_benchmark", "summarize", "SUMMARY_FIELDS"]

SUMMARY_FIELDS = ("method", "parameter", "true", "bias", "std", "rmse", "ratio_mu", "ratio_wf")


@dataclass
class BenchConfig:
    d: tuple
    rho: float = 0.8
    n: int = 512
    reps: int = 500
    seed: int = 0
    methods: tuple = ("mww",)
    M: int = 4
    j0: int = 1
    j1: int = None
    J: int = 10
    m: int = None
    phase: str = "second"
    ar: list = field(default_factory=list)
    ma: list = field(default_factory=list)
    difference: int = None
    workers: int = 1
    sigma: list = None

    def model(self):
        if self.sigma is not None:
            return FivarmaModel(self.d, self.sigma, self.ar, self.ma)
        return FivarmaModel.correlated(self.d, self.rho, self.ar, self.ma)

    def true_d(self):
        d = np.asarray(self.d, dtype=float).copy()
        if self.difference is not None:
            d[self.difference] -= 1.0
        return d


@dataclass
class BenchResult:
    config: BenchConfig
    true_d: np.ndarray
    true_cov: np.ndarray
    d: dict
    d_univariate: dict
    cov: dict


def _replicate(config, r):
    model = config.model()
    x, _ = fivarma(config.n, model, replication_rng(config.seed, r))
    if config.difference is not None:
        x = differentiate_component(x, config.difference, 1)
    out = {}
    for method in config.methods:
        if method == "mww":
            est = mww(x, scaling_filter("Daubechies", 2 * config.M), config.j0, config.j1, config.J)
        elif method == "mfw":
            est = mfw(x, config.m, config.phase)
        else:
            raise ValueError(f"unknown method {method!r}")
        out[method] = (est.d, est.d_univariate, est.cov)
    return out


def run_benchmark(config):
    """Simulate ``config.reps`` replications and estimate with each method."""
    if config.reps < 1:
        raise ValueError("need at least one replication")
    task = partial(_replicate, config)
    if config.workers and config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(task, range(config.reps), chunksize=max(1, config.reps // (4 * config.workers))))
    else:
        results = [task(r) for r in range(config.reps)]
    model = config.model()
    d, du, cov = {}, {}, {}
    for method in config.methods:
        d[method] = np.array([res[method][0] for res in results])
        du[method] = np.array([res[method][1] for res in results])
        cov[method] = np.array([res[method][2] for res in results])
    return BenchResult(config, config.true_d(), long_run_cov(model.sigma, model.ar, model.ma), d, du, cov)


def _moments(est, truth):
    bias = np.mean(est, axis=0) - truth
    std = np.std(est, axis=0)
    return bias, std, np.sqrt(bias**2 + std**2)


def summarize(result):
    """Rows of bias / std / RMSE per parameter and method.

    ``ratio_mu`` is the multivariate over univariate RMSE for memory
    parameters; ``ratio_wf`` is the MWW over MFW RMSE when both ran.
    """
    rows = []
    p = result.true_d.size
    rmse = {}
    for method in result.d:
        bias, std, rm = _moments(result.d[method], result.true_d)
        _, _, rm_u = _moments(result.d_univariate[method], result.true_d)
        for l in range(p):
            key = f"d{l + 1}"
            rmse[method, key] = rm[l]
            rows.append({"method": method, "parameter": key, "true": float(result.true_d[l]),
                         "bias": float(bias[l]), "std": float(std[l]), "rmse": float(rm[l]),
                         "ratio_mu": float(rm[l] / rm_u[l]) if rm_u[l] > 0 else None, "ratio_wf": None})
        covs = result.cov[method]
        true_corr = cov_to_corr(result.true_cov)
        corr = np.array([cov_to_corr(c) for c in covs])
        for l in range(p):
            for m in range(l, p):
                key = f"omega{l + 1}{m + 1}"
                b, s, r = _moments(covs[:, l, m], result.true_cov[l, m])
                rmse[method, key] = r
                rows.append({"method": method, "parameter": key, "true": float(result.true_cov[l, m]),
                             "bias": float(b), "std": float(s), "rmse": float(r),
                             "ratio_mu": None, "ratio_wf": None})
        for l in range(p):
            for m in range(l + 1, p):
                key = "correlation" if p == 2 else f"correlation{l + 1}{m + 1}"
                b, s, r = _moments(corr[:, l, m], true_corr[l, m])
                rmse[method, key] = r
                rows.append({"method": method, "parameter": key, "true": float(true_corr[l, m]),
                             "bias": float(b), "std": float(s), "rmse": float(r),
                             "ratio_mu": None, "ratio_wf": None})
    if "mww" in result.d and "mfw" in result.d:
        for row in rows:
            if row["method"] == "mww" and rmse["mfw", row["parameter"]] > 0:
                row["ratio_wf"] = float(rmse["mww", row["parameter"]] / rmse["mfw", row["parameter"]])
    return rows


def config_dict(config):
    out = asdict(config)
    out["d"] = list(config.d)
    out["methods"] = list(config.methods)
    for key in ("ar", "ma", "sigma"):
        if out[key] is not None:
            out[key] = np.asarray(out[key], dtype=float).tolist()
    return out
