"""Multivariate Fourier Whittle (MFW) estimation.

The concentrated criterion is

    R(d) = log det Omega(d) - 2 (sum_l d_l) mean_j log(lambda_j),
    Omega(d) = (1/m) sum_j Re(Psi_j(d) I(lambda_j) Psi_j(d)^*),

with ``Psi_j(d) = diag(lambda_j^d exp(-i (pi - lambda_j) d / 2))``, the
inverse of the spectral scaling ``E[W W^*] ~ Psi_j^{-1} Omega Psi_j^{-*}``
implied by the DFT ``W(lambda) = (2 pi N)^{-1/2} sum_t X(t) e^{i t lambda}``.
"""

from dataclasses import dataclass

import numpy as np

from . import _optim
from .estimate import MemoryEstimate

__all__ = [
    "FourierTransformSet",
    "PHASES",
    "default_m",
    "fourier_transform",
    "mfw_cov_eval",
    "mfw_eval",
    "mfw",
]

PHASES = ("second", "first", "none")


@dataclass(frozen=True)
class FourierTransformSet:
    """DFT of the series at the first ``m`` Fourier frequencies."""

    w: np.ndarray
    lambdas: np.ndarray
    n: int

    @property
    def m(self):
        return self.lambdas.size

    @property
    def p(self):
        return self.w.shape[1]

    def periodogram(self, j):
        """``I(lambda_j) = W W^*`` for 1-based frequency index ``j``."""
        wj = self.w[j - 1]
        return np.outer(wj, wj.conj())

    def component(self, l):
        return FourierTransformSet(self.w[:, [l]], self.lambdas, self.n)


def default_m(n):
    """``floor(N^0.65)`` frequencies."""
    return int(np.floor(n**0.65 + 1e-9))


def fourier_transform(x, m=None):
    """DFT ``W(lambda_j)`` for ``j = 1..m`` as an ``(m, p)`` complex array."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n = x.shape[0]
    if m is None:
        m = default_m(n)
    m = int(m)
    if not 1 <= m < n / 2:
        raise ValueError(f"number of frequencies m={m} must satisfy 1 <= m < N/2 = {n / 2}")
    lambdas = 2.0 * np.pi * np.arange(1, m + 1) / n
    # sum_{t=1}^N x(t) e^{i t lam} = e^{i lam} * conj(fft(x))[j] for real x
    spec = np.conj(np.fft.fft(x, axis=0)[1:m + 1])
    w = np.exp(1j * lambdas)[:, None] * spec / np.sqrt(2.0 * np.pi * n)
    return FourierTransformSet(w, lambdas, n)


def _psi(d, lambdas, phase):
    d = np.atleast_1d(np.asarray(d, dtype=float))
    mag = lambdas[:, None] ** d[None, :]
    if phase == "second":
        return mag * np.exp(-0.5j * np.outer(np.pi - lambdas, d))
    if phase == "first":
        return mag * np.exp(-0.5j * np.pi * d)[None, :]
    if phase == "none":
        return mag.astype(complex)
    raise ValueError(f"phase must be one of {PHASES}, got {phase!r}")


def mfw_cov_eval(d, F, phase="second"):
    """Concentrated long-run covariance estimate for a given ``d``."""
    v = _psi(d, F.lambdas, phase) * F.w
    omega = np.real(v.T @ v.conj()) / F.m
    return (omega + omega.T) / 2.0


def mfw_eval(d, F, phase="second"):
    """Concentrated MFW criterion; ``+inf`` where Omega(d) is not positive definite."""
    d = np.atleast_1d(np.asarray(d, dtype=float))
    sign, logdet = np.linalg.slogdet(mfw_cov_eval(d, F, phase))
    if sign <= 0 or not np.isfinite(logdet):
        return np.inf
    return logdet - 2.0 * d.sum() * np.mean(np.log(F.lambdas))


def _univariate(F, bounds):
    out = np.empty(F.p)
    for l in range(F.p):
        Fl = F.component(l)
        out[l], _, _ = _optim.minimize_1d(lambda t: mfw_eval([t], Fl, "none"), bounds)
    return out


def mfw(x, m=None, phase="second", bounds=_optim.DEFAULT_BOUNDS):
    """MFW estimates of the memory vector and long-run covariance.

    Parameters
    ----------
    x : array_like, shape (N,) or (N, p)
    m : int, optional
        Number of Fourier frequencies, default ``floor(N^0.65)``.
    phase : {"second", "first", "none"}
        Phase correction in Psi_j: ``exp(-i (pi - lambda_j) d / 2)``,
        ``exp(-i pi d / 2)`` or none.
    bounds : (float, float)
        Search box for every component of ``d``.

    Returns
    -------
    MemoryEstimate
        ``cov`` is ``2 pi`` times the concentrated matrix at ``d hat``, which
        puts it on the scale of the long-run covariance.
    """
    if phase not in PHASES:
        raise ValueError(f"phase must be one of {PHASES}, got {phase!r}")
    F = fourier_transform(x, m)
    d_uni = _univariate(F, bounds)
    if F.p == 1:
        d_hat, nit = d_uni, 0
    else:
        d_hat, _, nit = _optim.minimize_nd(lambda d: mfw_eval(d, F, phase), d_uni, bounds)
    flags = {}
    if _optim.boundary_hits(d_hat, bounds):
        flags["boundary"] = True
    return MemoryEstimate(
        d=d_hat,
        cov=2.0 * np.pi * mfw_cov_eval(d_hat, F, phase),
        method="mfw",
        criterion=float(mfw_eval(d_hat, F, phase)),
        iterations=nit,
        d_univariate=d_uni,
        flags=flags,
        params={"m": F.m, "phase": phase, "bounds": list(bounds)},
    )
