"""Bounded minimizers used by both Whittle estimators."""

import logging

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .exceptions import ConvergenceError

logger = logging.getLogger(__name__)

DEFAULT_BOUNDS = (-1.0, 3.0)
FD_STEP = 1e-6
FTOL = 1e-8
MAXITER = 500


def _finite(f):
    # +inf sentinels are replaced by a huge finite value so the line search backs off
    def wrapped(x):
        v = f(x)
        return v if np.isfinite(v) else 1e300

    return wrapped


def minimize_1d(f, bounds=DEFAULT_BOUNDS, xatol=1e-7):
    """Bounded scalar minimization (Brent on an interval)."""
    res = minimize_scalar(_finite(f), bounds=bounds, method="bounded",
                          options={"xatol": xatol, "maxiter": MAXITER})
    if not res.success:
        raise ConvergenceError(f"1-d search failed: {res.message}", best_d=res.x, best_value=res.fun)
    return float(res.x), float(res.fun), int(res.nfev)


def central_gradient(f, x, step=FD_STEP):
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        h = step * max(1.0, abs(x[i]))
        e = np.zeros_like(x)
        e[i] = h
        grad[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return grad


def minimize_nd(f, x0, bounds=DEFAULT_BOUNDS, maxiter=MAXITER, ftol=FTOL):
    """Quasi-Newton (L-BFGS-B) with central finite-difference gradients.

    Returns ``(x, fun, nit)``. Raises :class:`ConvergenceError` carrying the
    best iterate when the iteration budget is exhausted.
    """
    x0 = np.clip(np.asarray(x0, dtype=float), bounds[0], bounds[1])
    # centre on the starting value so the relative ftol test ignores additive constants
    # (e.g. the p log c^2 shift when the data are rescaled)
    f0 = f(x0)
    offset = f0 if np.isfinite(f0) else 0.0
    g = _finite(lambda x: f(x) - offset)
    res = minimize(g, x0, jac=lambda x: central_gradient(g, x), method="L-BFGS-B",
                   bounds=[bounds] * x0.size,
                   options={"maxiter": maxiter, "ftol": ftol, "gtol": 1e-7})
    if res.status == 1:
        raise ConvergenceError(f"no convergence after {res.nit} iterations",
                               best_d=res.x, best_value=res.fun + offset)
    if not res.success:
        # line-search stalls at the optimum are expected with FD gradients
        logger.debug("L-BFGS-B stopped early: %s", res.message)
    return np.asarray(res.x), float(res.fun) + offset, int(res.nit)


def boundary_hits(x, bounds=DEFAULT_BOUNDS, tol=1e-6):
    x = np.asarray(x)
    return bool(np.any((x <= bounds[0] + tol) | (x >= bounds[1] - tol)))
