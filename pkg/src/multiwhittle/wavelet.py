"""Daubechies filters, boundary-free pyramidal DWT and the wavelet Fourier transform.

The transform keeps only the coefficients whose filter support lies entirely
inside the sample ("exact" DWT), so the number of coefficients per scale
follows ``n_j = floor((n_{j-1} - q) / 2) + 1`` with ``n_0 = N``.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import WaveletError

__all__ = [
    "WaveletFilter",
    "WaveletDecomp",
    "WaveletSpectrum",
    "scaling_filter",
    "compute_nj",
    "dwt_exact",
    "psi_hat",
    "psi_hat_exact",
    "k_eval",
]

_SUPPORTED_ORDERS = tuple(range(2, 21, 2))


@dataclass(frozen=True)
class WaveletFilter:
    """Low-pass (scaling) filter ``h`` of even length ``q``."""

    h: np.ndarray
    family: str = "Daubechies"

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.ndim != 1 or h.size < 2 or h.size % 2:
            raise WaveletError(f"filter length must be even and >= 2, got {h.size}")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    @property
    def q(self):
        return self.h.size

    @property
    def vanishing_moments(self):
        return self.h.size // 2

    @property
    def g(self):
        """Quadrature-mirror high-pass filter ``g_m = (-1)^m h_{q-1-m}``."""
        signs = (-1.0) ** np.arange(self.q)
        return signs * self.h[::-1]


def _daubechies_taps(M):
    # Spectral factorization of |m0|^2 = cos^{2M}(w/2) P(sin^2(w/2)),
    # P(y) = sum_k C(M-1+k, k) y^k; keep the roots inside the unit disc
    # (extremal phase).
    if M == 1:
        return np.array([1.0, 1.0]) / np.sqrt(2.0)
    p_coeffs = [comb(M - 1 + k, k) for k in range(M)]
    y_roots = np.roots(p_coeffs[::-1])
    zeros = []
    for y in y_roots:
        # y = (2 - z - 1/z) / 4  <=>  z^2 - (2 - 4y) z + 1 = 0
        pair = np.roots([1.0, -(2.0 - 4.0 * y), 1.0])
        zeros.append(pair[np.argmin(np.abs(pair))])
    q_poly = np.real(np.poly(zeros))
    q_poly /= q_poly.sum()
    binom = np.array([comb(M, k) for k in range(M + 1)], dtype=float) / 2.0**M
    h = np.sqrt(2.0) * np.convolve(binom, q_poly)
    return h[::-1] if abs(h[0]) < abs(h[-1]) else h


def scaling_filter(family="Daubechies", order=8):
    """Extremal-phase Daubechies scaling filter.

    Parameters
    ----------
    family : str
        Only ``"Daubechies"`` is available.
    order : int
        Filter length ``q`` (even, 2..20). The wavelet has ``q / 2`` vanishing
        moments; ``order=2`` is the Haar filter.

    Returns
    -------
    WaveletFilter
    """
    if str(family).lower() not in ("daubechies", "db"):
        raise WaveletError(f"unsupported wavelet family {family!r}; only Daubechies is available")
    if int(order) != order or order not in _SUPPORTED_ORDERS:
        raise WaveletError(f"Daubechies order must be one of {_SUPPORTED_ORDERS}, got {order}")
    return WaveletFilter(_daubechies_taps(int(order) // 2))


def compute_nj(n, q):
    """Number of boundary-free coefficients at each scale.

    Returns ``(nj, jmax)``; ``nj`` is empty and ``jmax == 0`` when ``n < q``.
    """
    n = int(n)
    q = int(q)
    nj = []
    prev = n
    while prev >= q:
        cur = (prev - q) // 2 + 1
        nj.append(cur)
        prev = cur
    return np.array(nj, dtype=int), len(nj)


@dataclass(frozen=True)
class WaveletDecomp:
    """Detail coefficients of all scales, stacked along axis 0.

    ``coeffs`` has shape ``(index[-1],)`` for a single series or
    ``(index[-1], p)`` for a multivariate one. Scale ``j`` (1-based) occupies
    rows ``index[j-1]:index[j]`` of the block, with ``index[0] = 0``.
    """

    coeffs: np.ndarray
    nj: np.ndarray
    filter: WaveletFilter = field(repr=False, default=None)
    n: int = 0

    @property
    def jmax(self):
        return len(self.nj)

    @property
    def index(self):
        """Cumulative end offset of each scale block (first entry 0)."""
        return np.concatenate(([0], np.cumsum(self.nj)))

    @property
    def p(self):
        return 1 if self.coeffs.ndim == 1 else self.coeffs.shape[1]

    def scale(self, j):
        """Coefficients at scale ``j`` (1 <= j <= jmax)."""
        if not 1 <= j <= self.jmax:
            raise WaveletError(f"scale {j} outside 1..{self.jmax}")
        idx = self.index
        return self.coeffs[idx[j - 1]:idx[j]]


def _analysis_step(a, h, g):
    # rows of `win` are a[2k : 2k+q]
    win = sliding_window_view(a, h.size, axis=0)[::2]
    return win @ h, win @ g


def dwt_exact(x, filt):
    """Pyramidal DWT keeping boundary-free coefficients only.

    Parameters
    ----------
    x : array_like, shape (N,) or (N, p)
        Series; columns of a 2-D array are transformed independently.
    filt : WaveletFilter

    Returns
    -------
    WaveletDecomp
    """
    a = np.asarray(x, dtype=float)
    if a.ndim not in (1, 2):
        raise WaveletError("dwt_exact expects a 1-D or 2-D array")
    if a.shape[0] < filt.q:
        raise WaveletError(f"series of length {a.shape[0]} is shorter than the filter ({filt.q})")
    nj, _ = compute_nj(a.shape[0], filt.q)
    h = filt.h
    g = filt.g
    details = []
    for _ in nj:
        a, d = _analysis_step(a, h, g)
        details.append(d)
    return WaveletDecomp(np.concatenate(details, axis=0), nj, filt, int(np.shape(x)[0]))


@dataclass(frozen=True)
class WaveletSpectrum:
    """Samples of the wavelet Fourier transform on a symmetric grid.

    ``convention`` is ``"angular"`` for ``psi_hat(w) = int psi(t) e^{-iwt} dt``
    (so ``int |psi_hat|^2 = 2 pi``) or ``"unitary"`` when the transform carries
    the extra ``(2 pi)^{-1/2}`` factor (``int |psi_hat|^2 = 1``).
    """

    psih: np.ndarray
    grid: np.ndarray
    vanishing_moments: int
    convention: str = "angular"

    @property
    def norm(self):
        """Value of ``K(0)`` for a unit-norm wavelet under this convention."""
        return 2.0 * np.pi if self.convention == "angular" else 1.0


def _m(taps, w):
    k = np.arange(taps.size)
    return np.exp(-1j * np.multiply.outer(w, k)) @ taps / np.sqrt(2.0)


def psi_hat(filt, w, J=10):
    """Cascade approximation of the wavelet Fourier transform at arbitrary ``w``."""
    w = np.asarray(w, dtype=float)
    out = _m(filt.g, w / 2.0)
    for j in range(2, int(J) + 1):
        out = out * _m(filt.h, w / 2.0**j)
    return out


def psi_hat_exact(filt, J=10, convention="angular"):
    """Fourier transform of the wavelet via the truncated cascade product.

    ``psi_hat(w) = m1(w/2) * prod_{j=2..J} m0(w/2^j)`` is evaluated at
    ``q * 2^J`` equally spaced points of
    ``[-pi 2^(J-3) (q-1)/2, pi 2^(J-3) (q-1)/2]``.
    """
    if int(J) != J or not 3 <= J <= 15:
        raise WaveletError(f"precision J must be an integer in [3, 15], got {J}")
    if convention not in ("angular", "unitary"):
        raise WaveletError(f"unknown Fourier convention {convention!r}")
    J = int(J)
    q = filt.q
    half = np.pi * 2.0 ** (J - 3) * (q - 1) / 2.0
    grid = np.linspace(-half, half, q * 2**J)
    psih = psi_hat(filt, grid, J)
    if convention == "unitary":
        psih = psih / np.sqrt(2.0 * np.pi)
    return WaveletSpectrum(psih, grid, filt.vanishing_moments, convention)


def k_eval(spectrum, delta):
    """``K(delta) = int |w|^{-delta} |psi_hat(w)|^2 dw`` by the trapezoid rule."""
    delta = float(delta)
    M = spectrum.vanishing_moments
    if not np.isfinite(delta) or delta >= 2 * M:
        raise WaveletError(
            f"K(delta) diverges at the origin for delta={delta} >= 2M={2 * M}"
        )
    w = np.abs(spectrum.grid)
    integrand = w ** (-delta) * np.abs(spectrum.psih) ** 2
    return float(np.trapezoid(integrand, spectrum.grid))
