"""Per-scale wavelet statistics and helpers for choosing the scale range.

Statistics are computed per replication (or per sliding window) and then
summarised by quartiles and Tukey whiskers, one row per (scale, pair), in a
tidy layout suitable for boxplots.
"""

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import DataError
from .wavelet import WaveletDecomp, dwt_exact

__all__ = [
    "ScaleStats",
    "TheoreticalLine",
    "IDENTIFIABILITY_BAND",
    "CSV_FIELDS",
    "scale_stats",
    "scale_stats_from_series",
    "theoretical_line",
    "sliding_windows",
    "identifiability_check",
    "differentiate_component",
    "integrate_component",
    "write_csv",
]

IDENTIFIABILITY_BAND = (0.75, 1.25)
CSV_FIELDS = ("scale", "pair", "stat", "q1", "median", "q3", "lo", "hi", "n")
STATS = ("variance", "log2_variance", "covariance", "log2_abs_covariance", "correlation")
MIN_CORR_COEFFS = 3
ZERO_VAR_RTOL = 1e-20


@dataclass(frozen=True)
class ScaleStats:
    """Empirical wavelet second moments, shape ``(R, Jmax, p, p)``.

    ``cov[r, j-1]`` is the mean of ``W_{j,k} W_{j,k}^T`` over positions ``k``
    for replication ``r``; coefficients have mean zero, so no centering is
    applied. ``corr`` is NaN where it is undefined (zero variance or fewer
    than three coefficients at the scale).
    """

    cov: np.ndarray
    corr: np.ndarray
    nj: np.ndarray

    @property
    def jmax(self):
        return len(self.nj)

    @property
    def p(self):
        return self.cov.shape[-1]

    @property
    def variance(self):
        return np.diagonal(self.cov, axis1=2, axis2=3)

    def values(self, stat, l, m):
        """Per-replication values of ``stat`` for pair ``(l, m)``, shape ``(R, Jmax)``."""
        if stat == "variance":
            return self.cov[:, :, l, l]
        if stat == "log2_variance":
            with np.errstate(divide="ignore"):
                return np.log2(self.cov[:, :, l, l])
        if stat == "covariance":
            return self.cov[:, :, l, m]
        if stat == "log2_abs_covariance":
            with np.errstate(divide="ignore"):
                return np.log2(np.abs(self.cov[:, :, l, m]))
        if stat == "correlation":
            return self.corr[:, :, l, m]
        raise ValueError(f"unknown statistic {stat!r}; expected one of {STATS}")

    def pairs(self, stat):
        if stat in ("variance", "log2_variance"):
            return [(l, l) for l in range(self.p)]
        if stat == "correlation":
            return [(l, m) for l in range(self.p) for m in range(l + 1, self.p)]
        return [(l, m) for l in range(self.p) for m in range(l, self.p)]

    def summary(self, stat="correlation"):
        """One dict per (scale, pair) with quartiles and whiskers (1.5 IQR)."""
        rows = []
        for j in range(1, self.jmax + 1):
            for l, m in self.pairs(stat):
                vals = self.values(stat, l, m)[:, j - 1]
                rows.append({"scale": j, "pair": f"{l + 1}-{m + 1}", "stat": stat,
                             **_box(vals), "n": int(self.nj[j - 1])})
        return rows


def _box(vals):
    vals = np.asarray(vals, dtype=float)
    vals = vals[np.isfinite(vals)]
    if vals.size == 0:
        return dict.fromkeys(("q1", "median", "q3", "lo", "hi"), None)
    q1, med, q3 = np.percentile(vals, [25, 50, 75])
    iqr = q3 - q1
    inside = vals[(vals >= q1 - 1.5 * iqr) & (vals <= q3 + 1.5 * iqr)]
    return {"q1": float(q1), "median": float(med), "q3": float(q3),
            "lo": float(inside.min()), "hi": float(inside.max())}


def scale_stats(decomps):
    """Per-scale covariances and correlations for each decomposition.

    Parameters
    ----------
    decomps : sequence of WaveletDecomp
        Multivariate decompositions (one per replication or window) sharing
        the same per-scale counts.
    """
    decomps = [decomps] if isinstance(decomps, WaveletDecomp) else list(decomps)
    if not decomps:
        raise ValueError("scale_stats needs at least one decomposition")
    nj = np.asarray(decomps[0].nj)
    for dec in decomps[1:]:
        if not np.array_equal(dec.nj, nj):
            raise ValueError("decompositions have inconsistent scales")
    idx = np.concatenate(([0], np.cumsum(nj)))
    R, J = len(decomps), len(nj)
    p = decomps[0].p
    cov = np.empty((R, J, p, p))
    for r, dec in enumerate(decomps):
        c = dec.coeffs if dec.coeffs.ndim == 2 else dec.coeffs[:, None]
        for j in range(J):
            w = c[idx[j]:idx[j + 1]]
            cov[r, j] = w.T @ w / nj[j]
    var = np.diagonal(cov, axis1=2, axis2=3).copy()
    # rounding residue of an annihilated component counts as zero variance
    var[var <= ZERO_VAR_RTOL * var.max(axis=(1, 2), keepdims=True)] = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        sd = np.sqrt(var)
        corr = cov / (sd[..., :, None] * sd[..., None, :])
    corr[~np.isfinite(corr)] = np.nan
    corr[:, nj < MIN_CORR_COEFFS] = np.nan
    corr = np.clip(corr, -1.0, 1.0)
    return ScaleStats(cov, corr, nj)


def scale_stats_from_series(series, filt):
    """Decompose each ``(N, p)`` array in ``series`` and summarise."""
    return scale_stats([dwt_exact(np.asarray(x, dtype=float), filt) for x in series])


class TheoreticalLine(NamedTuple):
    slope: float
    intercept: float
    unidentifiable: bool


def theoretical_line(d, G_entry):
    """Line ``j (d_l + d_m) + log2 G_lm`` predicted for the log2 scalogram.

    ``d`` is the pair ``(d_l, d_m)``. The intercept is NaN when ``G_entry`` is
    not positive; ``unidentifiable`` marks memory gaps inside the
    identifiability band, where the covariance vanishes at coarse scales.
    """
    dl, dm = (float(v) for v in d)
    intercept = float(np.log2(G_entry)) if G_entry > 0 else float("nan")
    band = IDENTIFIABILITY_BAND
    return TheoreticalLine(dl + dm, intercept, bool(band[0] < abs(dl - dm) < band[1]))


def sliding_windows(x, width, step):
    """Overlapping windows of ``width`` rows starting every ``step`` rows."""
    x = np.asarray(x)
    n = x.shape[0]
    width, step = int(width), int(step)
    if width > n:
        raise ValueError(f"window width {width} exceeds series length {n}")
    if width < 1 or step < 1:
        raise ValueError("window width and step must be positive")
    count = (n - width) // step + 1
    return [x[i * step:i * step + width] for i in range(count)]


def identifiability_check(d, band=IDENTIFIABILITY_BAND):
    """Symmetric boolean matrix flagging pairs with ``|d_l - d_m|`` inside ``band``."""
    d = np.atleast_1d(np.asarray(d, dtype=float))
    gap = np.abs(d[:, None] - d[None, :])
    return (gap > band[0]) & (gap < band[1])


def differentiate_component(x, component, order=1):
    """Replace one column by its ``order``-th difference.

    The other columns lose their first ``order`` rows so all columns stay
    aligned; the memory parameter of the differenced column drops by ``order``.
    """
    x = np.asarray(x, dtype=float)
    x2 = x[:, None] if x.ndim == 1 else x
    order = int(order)
    if order < 1:
        raise ValueError("order must be >= 1")
    if x2.shape[0] <= order:
        raise DataError(f"cannot difference {order} times a series of length {x2.shape[0]}")
    out = x2[order:].copy()
    out[:, component] = np.diff(x2[:, component], n=order)
    return out if x.ndim == 2 else out[:, 0]


def integrate_component(x, component, order=1):
    """Replace one column by its ``order``-fold cumulative sum (memory rises by ``order``)."""
    x = np.array(x, dtype=float)
    col = x[:, component] if x.ndim == 2 else x
    for _ in range(int(order)):
        col = np.cumsum(col)
    if x.ndim == 1:
        return col
    x[:, component] = col
    return x


def _fmt(v):
    if v is None or (isinstance(v, float) and not np.isfinite(v)):
        return ""
    return repr(v) if isinstance(v, float) else str(v)


def write_csv(rows, fh):
    """Write summary rows to an open text file in the tidy boxplot layout."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in CSV_FIELDS])
