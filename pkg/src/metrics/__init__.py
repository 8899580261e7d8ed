from src.metrics.deterministic import max_error, sse
from src.metrics.distributional import gaussian_kl, mkl, mwd, wasserstein2
from src.metrics.series import GaussianSeries, PositionSeries, clip_to_common_length
from src.metrics.summary import half_distance_time, has_overshoot, peak_velocity, terminal_std, time_to_target

__all__ = [
    "GaussianSeries",
    "PositionSeries",
    "clip_to_common_length",
    "gaussian_kl",
    "half_distance_time",
    "has_overshoot",
    "max_error",
    "mkl",
    "mwd",
    "peak_velocity",
    "sse",
    "terminal_std",
    "time_to_target",
    "wasserstein2",
]
