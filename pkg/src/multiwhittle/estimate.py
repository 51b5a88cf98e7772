"""Result container shared by the Fourier and wavelet estimators."""

from dataclasses import dataclass, field

import numpy as np

__all__ = ["MemoryEstimate", "cov_to_corr"]


def cov_to_corr(cov):
    """Normalize a covariance matrix to correlations (NaN where a variance is <= 0)."""
    cov = np.asarray(cov, dtype=float)
    sd = np.sqrt(np.where(np.diag(cov) > 0, np.diag(cov), np.nan))
    corr = cov / np.outer(sd, sd)
    np.fill_diagonal(corr, np.where(np.isfinite(sd), 1.0, np.nan))
    return corr


@dataclass
class MemoryEstimate:
    """Estimated memory vector and long-run covariance.

    Attributes
    ----------
    d : ndarray
        Memory parameters.
    cov : ndarray
        Long-run covariance estimate (Omega hat).
    method : str
        ``"mfw"`` or ``"mww"``.
    criterion : float
        Concentrated criterion at ``d``.
    iterations : int
    d_univariate : ndarray
        Componentwise estimates used as the starting point.
    G : ndarray or None
        Wavelet estimate of G(d) before the phase correction (MWW only).
    flags : dict
        Warnings such as identifiability problems or boundary hits.
    params : dict
        Tuning parameters actually used.
    """

    d: np.ndarray
    cov: np.ndarray
    method: str
    criterion: float
    iterations: int = 0
    d_univariate: np.ndarray = None
    G: np.ndarray = None
    flags: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def correlation(self):
        return cov_to_corr(self.cov)
