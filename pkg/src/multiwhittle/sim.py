"""Simulation of Gaussian FIVARMA(q, d, r) paths.

The process is ``A(L) diag(1 - L)^d X(t) = B(L) u(t)`` with
``A(L) = I + sum_k A_k L^k`` and ``B(L) = I + sum_k B_k L^k``: a VARMA path
is generated first and each component is then fractionally integrated.
Every sampler takes an explicit :class:`numpy.random.Generator`; use
:func:`replication_rng` to derive independent per-replication streams.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from .exceptions import ModelError

__all__ = [
    "FivarmaModel",
    "replication_rng",
    "gaussian_noise",
    "varma",
    "fracdiff_coeffs",
    "fracdiff_integrate",
    "long_run_cov",
    "fivarma",
    "check_stability",
]


def replication_rng(seed, replication=None):
    """Generator for ``(seed, replication)``, independent of execution order."""
    if replication is None:
        return np.random.default_rng(seed)
    return np.random.default_rng([int(seed), int(replication)])


def _as_cov(sigma):
    sigma = np.atleast_2d(np.asarray(sigma, dtype=float))
    if sigma.shape[0] != sigma.shape[1]:
        raise ModelError(f"covariance must be square, got shape {sigma.shape}")
    if not np.allclose(sigma, sigma.T, rtol=0.0, atol=1e-12):
        raise ModelError("covariance matrix is not symmetric")
    try:
        chol = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        raise ModelError("covariance matrix is not positive definite") from None
    return sigma, chol


def _as_lags(mats, p, name):
    if mats is None:
        return []
    arr = np.asarray(mats, dtype=float)
    if arr.size == 0:
        return []
    if arr.ndim < 2:
        arr = arr.reshape(1, 1, 1) if arr.size == 1 else arr.reshape(-1, 1, 1)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.shape[1:] != (p, p):
        raise ModelError(f"{name} matrices must be {p}x{p}, got {arr.shape[1:]}")
    return [m for m in arr]


def check_stability(ar):
    """Raise :class:`ModelError` unless ``det(A(z))`` has no root in the closed unit disc."""
    if not ar:
        return
    p = ar[0].shape[0]
    q = len(ar)
    comp = np.zeros((p * q, p * q))
    comp[:p, :] = -np.hstack(ar)
    comp[p:, :-p] = np.eye(p * (q - 1))
    moduli = np.abs(np.linalg.eigvals(comp))
    worst = moduli.max()
    if worst >= 1.0:
        raise ModelError(
            f"AR part is not stable: companion eigenvalue of modulus {worst:.6g} >= 1 "
            f"(root of det A(z) at modulus {1.0 / worst:.6g})"
        )


@dataclass
class FivarmaModel:
    """Parameters of a FIVARMA(q, d, r) process.

    ``ar`` and ``ma`` hold ``A_1..A_q`` and ``B_1..B_r``; the identity lag-0
    terms are implicit.
    """

    d: np.ndarray
    sigma: np.ndarray = None
    ar: list = field(default_factory=list)
    ma: list = field(default_factory=list)

    def __post_init__(self):
        self.d = np.atleast_1d(np.asarray(self.d, dtype=float))
        if self.d.ndim != 1 or not np.all(np.isfinite(self.d)):
            raise ModelError("d must be a finite vector")
        p = self.d.size
        if self.sigma is None:
            self.sigma = np.eye(p)
        self.sigma, _ = _as_cov(self.sigma)
        if self.sigma.shape != (p, p):
            raise ModelError(f"sigma must be {p}x{p} to match d")
        self.ar = _as_lags(self.ar, p, "AR")
        self.ma = _as_lags(self.ma, p, "MA")
        check_stability(self.ar)

    @property
    def p(self):
        return self.d.size

    @classmethod
    def correlated(cls, d, rho, ar=None, ma=None):
        """Bivariate model with unit variances and innovation correlation ``rho``."""
        d = np.atleast_1d(np.asarray(d, dtype=float))
        sigma = np.full((d.size, d.size), float(rho))
        np.fill_diagonal(sigma, 1.0)
        return cls(d, sigma, ar if ar is not None else [], ma if ma is not None else [])


def gaussian_noise(n, sigma, rng):
    """``n`` i.i.d. draws from ``N(0, sigma)`` as an ``(n, p)`` array."""
    _, chol = _as_cov(sigma)
    n = int(n)
    if n < 0:
        raise ModelError("sample size must be non-negative")
    z = rng.standard_normal((n, chol.shape[0]))
    return z @ chol.T


def varma(n, sigma, ar=None, ma=None, rng=None, burn_in=None):
    """Stationary VARMA(q, r) path solving ``A(L) x(t) = B(L) eps(t)``.

    Parameters
    ----------
    n : int
        Number of returned observations.
    sigma : (p, p) array
        Innovation covariance.
    ar, ma : sequence of (p, p) arrays
        ``A_1..A_q`` and ``B_1..B_r``.
    rng : numpy.random.Generator
    burn_in : int, optional
        Leading samples discarded to forget the zero initial state; defaults
        to ``2 n``. Ignored for pure white noise.
    """
    sigma, _ = _as_cov(sigma)
    p = sigma.shape[0]
    ar = _as_lags(ar, p, "AR")
    ma = _as_lags(ma, p, "MA")
    check_stability(ar)
    if rng is None:
        rng = np.random.default_rng()
    if not ar and not ma:
        return gaussian_noise(n, sigma, rng)
    burn = 2 * int(n) if burn_in is None else int(burn_in)
    total = int(n) + burn
    eps = gaussian_noise(total, sigma, rng)
    u = eps.copy()
    for k, b in enumerate(ma, start=1):
        u[k:] += eps[:-k] @ b.T
    if ar:
        x = np.zeros_like(u)
        neg = [-a for a in ar]
        for t in range(total):
            acc = u[t].copy()
            for k, a in enumerate(neg, start=1):
                if t >= k:
                    acc += a @ x[t - k]
            x[t] = acc
    else:
        x = u
    return x[burn:]


def fracdiff_coeffs(d, n):
    """First ``n`` coefficients of ``(1 - L)^{-d}`` by the ratio recursion."""
    n = int(n)
    k = np.arange(1, n, dtype=float)
    out = np.empty(n)
    if n == 0:
        return out
    out[0] = 1.0
    out[1:] = np.cumprod((k - 1.0 + d) / k)
    return out


def _split_memory(d):
    # d = D + d_star with integer D and d_star in [-0.5, 0.5)
    D = int(np.floor(d + 0.5))
    return D, d - D


def fracdiff_integrate(u, d, burn_in=0):
    """Componentwise fractional integration ``(1 - L)^{-d_l} u_l``.

    The convolution is truncated at the first sample of ``u``. For
    ``d_l >= 0.5`` the memory is split into an integer part ``D`` and a
    fractional part in ``[-0.5, 0.5)``; the fractional filter is applied first,
    the leading ``burn_in`` rows are dropped, then ``D`` cumulative sums are
    taken.
    """
    u = np.asarray(u, dtype=float)
    vector = u.ndim == 1
    u2 = u[:, None] if vector else u
    d = np.broadcast_to(np.atleast_1d(np.asarray(d, dtype=float)), (u2.shape[1],))
    if not np.all(np.isfinite(d)):
        raise ModelError("d must be finite")
    n = u2.shape[0]
    burn_in = int(burn_in)
    if n - burn_in < 1:
        raise ModelError("input shorter than the burn-in")
    out = np.empty((n - burn_in, u2.shape[1]))
    for col, dl in enumerate(d):
        D, frac = _split_memory(float(dl))
        x = u2[:, col]
        if frac != 0.0:
            x = fftconvolve(x, fracdiff_coeffs(frac, n))[:n]
        x = x[burn_in:]
        for _ in range(D):
            x = np.cumsum(x)
        for _ in range(-D):
            x = np.concatenate(([x[0]], np.diff(x)))
        out[:, col] = x
    return out[:, 0] if vector else out


def long_run_cov(sigma, ar=None, ma=None):
    """``Omega = A(1)^{-1} B(1) Sigma B(1)^T A(1)^{-T}``."""
    sigma, _ = _as_cov(sigma)
    p = sigma.shape[0]
    a1 = np.eye(p) + sum(_as_lags(ar, p, "AR"), np.zeros((p, p)))
    b1 = np.eye(p) + sum(_as_lags(ma, p, "MA"), np.zeros((p, p)))
    try:
        left = np.linalg.solve(a1, b1)
    except np.linalg.LinAlgError:
        raise ModelError("A(1) is singular; the long-run covariance is undefined") from None
    omega = left @ sigma @ left.T
    return (omega + omega.T) / 2.0


def fivarma(n, model, rng, burn_in=None):
    """Simulate ``n`` observations of a FIVARMA process.

    Returns
    -------
    x : (n, p) array
    omega : (p, p) array
        Analytic long-run covariance of the model.
    """
    n = int(n)
    if n < 1:
        raise ModelError("sample size must be positive")
    burn = 2 * n if burn_in is None else int(burn_in)
    if model.ar or model.ma:
        u = varma(n + burn, model.sigma, model.ar, model.ma, rng, burn_in=burn)
    else:
        u = gaussian_noise(n + burn, model.sigma, rng)
    x = fracdiff_integrate(u, model.d, burn_in=burn)
    return x, long_run_cov(model.sigma, model.ar, model.ma)
