"""Multivariate wavelet Whittle (MWW) estimation.

For scales ``j0..j1`` with ``n_j`` coefficients each and ``n = sum n_j``:

    G(d)  = (1/n) sum_j diag(2^{-j d}) I(j) diag(2^{-j d}),
    R(d)  = log det G(d) + 2 log(2) ((1/n) sum_j j n_j) sum_l d_l,

where ``I(j) = sum_k W_{j,k} W_{j,k}^T`` is the scalogram. Wavelet
covariances behave like ``2^{j(d_l+d_m)} Omega_lm cos(pi (d_l-d_m)/2)
K(d_l+d_m) / (2 pi)`` at coarse scales (K under the angular Fourier
convention), which :func:`omega_correct` inverts.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _optim
from .diagnostics import IDENTIFIABILITY_BAND, identifiability_check
from .estimate import MemoryEstimate
from .exceptions import IdentifiabilityError, WaveletError
from .wavelet import WaveletDecomp, dwt_exact, k_eval, psi_hat_exact, scaling_filter, WaveletFilter

logger = logging.getLogger(__name__)

__all__ = [
    "Scalogram",
    "ScaleRange",
    "IDENTIFIABILITY_BAND",
    "scalogram",
    "mww_cov_eval",
    "mww_eval",
    "omega_correct",
    "identifiability_flags",
    "mww",
    "mww_wav",
    "default_scale_range",
]


@dataclass(frozen=True)
class Scalogram:
    """Per-scale sums of outer products, ``I[j-1] = I(j)``."""

    I: np.ndarray
    nj: np.ndarray

    @property
    def jmax(self):
        return len(self.nj)

    @property
    def p(self):
        return self.I.shape[1]

    def component(self, l):
        return Scalogram(self.I[:, [l]][:, :, [l]], self.nj)


@dataclass(frozen=True)
class ScaleRange:
    """Inclusive range of scales ``j0..j1`` used in estimation."""

    j0: int
    j1: int

    def validate(self, nj, p=1):
        jmax = len(nj)
        if not 1 <= self.j0 <= self.j1 <= jmax:
            raise WaveletError(f"scale range ({self.j0}, {self.j1}) must satisfy 1 <= j0 <= j1 <= Jmax={jmax}")
        n = int(np.sum(nj[self.j0 - 1:self.j1]))
        if n < p:
            raise WaveletError(f"only {n} coefficients in scales {self.j0}..{self.j1}; need at least p={p}")
        return self

    def scales(self):
        return np.arange(self.j0, self.j1 + 1)


def default_scale_range(n, nj, j0=2):
    """``(j0, min(floor(log2 N), Jmax))``."""
    j1 = min(int(np.floor(np.log2(n))), len(nj))
    return ScaleRange(j0, j1)


def scalogram(decomps):
    """Scalogram from a multivariate decomposition or a list of univariate ones."""
    if isinstance(decomps, WaveletDecomp):
        coeffs = decomps.coeffs if decomps.coeffs.ndim == 2 else decomps.coeffs[:, None]
        nj = np.asarray(decomps.nj)
    else:
        decomps = list(decomps)
        if not decomps:
            raise WaveletError("no decompositions given")
        nj = np.asarray(decomps[0].nj)
        for dec in decomps[1:]:
            if not np.array_equal(dec.nj, nj):
                raise WaveletError("components have different per-scale coefficient counts")
        coeffs = np.column_stack([dec.coeffs for dec in decomps])
    idx = np.concatenate(([0], np.cumsum(nj)))
    I = np.stack([coeffs[idx[j]:idx[j + 1]].T @ coeffs[idx[j]:idx[j + 1]] for j in range(len(nj))])
    return Scalogram(I, nj)


def _range_parts(S, rng):
    js = rng.scales()
    return js, S.I[js - 1], S.nj[js - 1]


def mww_cov_eval(d, S, scale_range):
    """``G(d)`` for the given scale range."""
    d = np.atleast_1d(np.asarray(d, dtype=float))
    js, I, nj = _range_parts(S, scale_range)
    w = 2.0 ** (-np.multiply.outer(js, d))
    G = np.einsum("jl,jlm,jm->lm", w, I, w) / nj.sum()
    return (G + G.T) / 2.0


def mww_eval(d, S, scale_range):
    """Concentrated MWW criterion; ``+inf`` where ``G(d)`` is not positive definite."""
    d = np.atleast_1d(np.asarray(d, dtype=float))
    sign, logdet = np.linalg.slogdet(mww_cov_eval(d, S, scale_range))
    if sign <= 0 or not np.isfinite(logdet):
        return np.inf
    js, _, nj = _range_parts(S, scale_range)
    return logdet + 2.0 * np.log(2.0) * (js @ nj / nj.sum()) * d.sum()


def identifiability_flags(d, band=IDENTIFIABILITY_BAND):
    """Pairs ``(l, m)``, ``l < m``, whose memory gap falls inside ``band``."""
    flagged = np.triu(identifiability_check(d, band), k=1)
    return [tuple(int(i) for i in pr) for pr in np.argwhere(flagged)]


def omega_correct(G, d, spectrum, on_error="raise", k_cache=None):
    """Long-run covariance ``Omega_lm = G_lm / (cos(pi (d_l - d_m)/2) K(d_l + d_m))``.

    ``K`` is normalized by its value for white noise (``spectrum.norm``) so
    the result does not depend on the Fourier convention of ``spectrum``.

    Parameters
    ----------
    on_error : {"raise", "nan"}
        What to do with entries whose cosine factor vanishes or whose
        ``d_l + d_m`` lies outside the domain of K.
    k_cache : dict, optional
        Memo of ``K`` values keyed by ``d_l + d_m``.
    """
    G = np.asarray(G, dtype=float)
    d = np.atleast_1d(np.asarray(d, dtype=float))
    if k_cache is None:
        k_cache = {}
    p = d.size
    omega = np.empty((p, p))
    for l in range(p):
        for m in range(l, p):
            c = np.cos(np.pi * (d[l] - d[m]) / 2.0)
            s = d[l] + d[m]
            try:
                if abs(c) <= 1e-8:
                    raise IdentifiabilityError(
                        f"cos(pi (d_{l} - d_{m}) / 2) vanishes for d gap {d[l] - d[m]:.6g}", [(l, m)])
                if s not in k_cache:
                    k_cache[s] = k_eval(spectrum, s) / spectrum.norm
                val = G[l, m] / (c * k_cache[s])
            except (IdentifiabilityError, WaveletError):
                if on_error == "raise":
                    raise
                val = np.nan
            omega[l, m] = omega[m, l] = val
    return omega


@lru_cache(maxsize=32)
def _spectrum_cached(taps, J):
    return psi_hat_exact(WaveletFilter(np.array(taps)), J)


def _univariate(S, rng, bounds):
    out = np.empty(S.p)
    for l in range(S.p):
        Sl = S.component(l)
        out[l], _, _ = _optim.minimize_1d(lambda t: mww_eval([t], Sl, rng), bounds)
    return out


def mww_wav(decomp, spectrum, j0=2, j1=None, bounds=_optim.DEFAULT_BOUNDS):
    """MWW estimation from a precomputed decomposition (or scalogram).

    Parameters
    ----------
    decomp : WaveletDecomp, list of WaveletDecomp, or Scalogram
    spectrum : WaveletSpectrum
        Fourier transform of the wavelet used for the decomposition.
    j0, j1 : int
        Scale range; ``j1`` defaults to ``min(floor(log2 N), Jmax)`` when the
        series length is known, else ``Jmax``. A ``j1`` above ``Jmax`` is
        lowered to ``Jmax`` and reported in ``flags["j1_clamped"]``.
    bounds : (float, float)
        Search box for each memory parameter.

    Returns
    -------
    MemoryEstimate
        ``cov`` holds Omega hat and ``G`` the uncorrected G(d hat).
    """
    S = decomp if isinstance(decomp, Scalogram) else scalogram(decomp)
    if j1 is None:
        n_obs = getattr(decomp, "n", 0) or 0
        j1 = min(int(np.floor(np.log2(n_obs))), S.jmax) if n_obs else S.jmax
    flags = {}
    if j1 > S.jmax:
        logger.warning("j1=%d exceeds Jmax=%d; using j1=%d", j1, S.jmax, S.jmax)
        flags["j1_clamped"] = int(j1)
        j1 = S.jmax
    rng = ScaleRange(int(j0), int(j1)).validate(S.nj, S.p)
    d_uni = _univariate(S, rng, bounds)
    if S.p == 1:
        d_hat, nit = d_uni, 0
    else:
        d_hat, _, nit = _optim.minimize_nd(lambda d: mww_eval(d, S, rng), d_uni, bounds)
    G = mww_cov_eval(d_hat, S, rng)
    omega = omega_correct(G, d_hat, spectrum, on_error="nan")
    pairs = identifiability_flags(d_hat)
    if pairs:
        flags["identifiability"] = [list(pr) for pr in pairs]
    undefined = np.argwhere(np.isnan(np.triu(omega)))
    if undefined.size:
        flags["undefined_cov"] = undefined.tolist()
    if _optim.boundary_hits(d_hat, bounds):
        flags["boundary"] = True
    return MemoryEstimate(
        d=d_hat,
        cov=omega,
        method="mww",
        criterion=float(mww_eval(d_hat, S, rng)),
        iterations=nit,
        d_univariate=d_uni,
        G=G,
        flags=flags,
        params={"j0": rng.j0, "j1": rng.j1, "bounds": list(bounds)},
    )


def mww(x, filt=None, j0=2, j1=None, J=10, bounds=_optim.DEFAULT_BOUNDS):
    """MWW estimates of the memory vector and long-run covariance.

    Parameters
    ----------
    x : array_like, shape (N,) or (N, p)
    filt : WaveletFilter, optional
        Defaults to the Daubechies filter with 4 vanishing moments.
    j0, j1 : int
        Lowest and highest scale used; ``j1`` defaults to
        ``min(floor(log2 N), Jmax)``.
    J : int
        Precision of the wavelet Fourier transform used for K.
    """
    if filt is None:
        filt = scaling_filter("Daubechies", 8)
    x = np.asarray(x, dtype=float)
    dec = dwt_exact(x if x.ndim == 2 else x[:, None], filt)
    spectrum = _spectrum_cached(tuple(filt.h), int(J))
    est = mww_wav(dec, spectrum, j0, j1, bounds)
    est.params.update({"M": filt.vanishing_moments, "J": int(J)})
    return est
