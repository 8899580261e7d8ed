import numpy as np

from src.exceptions import InputError
from src.metrics.series import PositionSeries


def _difference(sim: PositionSeries, ref: PositionSeries) -> np.ndarray:
    if len(sim) != len(ref):
        raise InputError(f"series length mismatch: {len(sim)} vs {len(ref)}")
    if len(sim) == 0:
        raise InputError("cannot compare empty series")
    return sim.values - ref.values


def sse(sim: PositionSeries, ref: PositionSeries) -> float:
    """逐步差值平方和"""
    diff = _difference(sim, ref)
    return float(diff @ diff)


def max_error(sim: PositionSeries, ref: PositionSeries) -> float:
    """逐步绝对误差的最大值"""
    return float(np.max(np.abs(_difference(sim, ref))))
