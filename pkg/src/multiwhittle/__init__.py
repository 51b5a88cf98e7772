"""Simulation and semi-parametric Whittle estimation of multivariate long-memory series.

The package offers FIVARMA simulation (:mod:`.sim`), an exact Daubechies DWT
(:mod:`.wavelet`), the Fourier (:mod:`.fourier`) and wavelet
(:mod:`.wavelet_whittle`) Whittle estimators, per-scale diagnostics
(:mod:`.diagnostics`) and a Monte Carlo harness (:mod:`.bench`).
"""

__version__ = "0.1.0"

from .diagnostics import (
    differentiate_component,
    identifiability_check,
    integrate_component,
    scale_stats,
    sliding_windows,
    theoretical_line,
)
from .estimate import MemoryEstimate
from .exceptions import (
    ConvergenceError,
    DataError,
    IdentifiabilityError,
    ModelError,
    MultiwhittleError,
    WaveletError,
)
from .fourier import fourier_transform, mfw, mfw_cov_eval, mfw_eval
from .sim import (
    FivarmaModel,
    fivarma,
    fracdiff_integrate,
    gaussian_noise,
    long_run_cov,
    replication_rng,
    varma,
)
from .wavelet import compute_nj, dwt_exact, k_eval, psi_hat_exact, scaling_filter
from .wavelet_whittle import mww, mww_cov_eval, mww_eval, mww_wav, omega_correct, scalogram
