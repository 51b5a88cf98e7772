"""Exception hierarchy shared by the simulation and estimation modules."""


class MultiwhittleError(Exception):
    """Base class for all package errors."""


class ModelError(MultiwhittleError, ValueError):
    """Invalid FIVARMA specification (non-PD covariance, unstable AR part, ...)."""


class WaveletError(MultiwhittleError, ValueError):
    """Unsupported filter, series too short, or K evaluated outside its domain."""


class DataError(MultiwhittleError, ValueError):
    """Malformed input data (ragged CSV rows, non-numeric cells, NaNs)."""


class ConvergenceError(MultiwhittleError, RuntimeError):
    """The optimizer stopped without converging.

    The best iterate found so far is kept on ``best_d`` / ``best_value`` so
    callers can decide whether it is usable.
    """

    def __init__(self, message, best_d=None, best_value=None):
        super().__init__(message)
        self.best_d = best_d
        self.best_value = best_value


class IdentifiabilityError(MultiwhittleError, ArithmeticError):
    """The cosine phase factor vanishes, so a long-run covariance entry is undefined."""

    def __init__(self, message, pairs=()):
        super().__init__(message)
        self.pairs = tuple(pairs)
