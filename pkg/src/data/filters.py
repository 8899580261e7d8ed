import numpy as np
from scipy.signal import savgol_filter

from src.config import config
from src.exceptions import InputError
from src.metrics import PositionSeries


def reference_acceleration(
    series: PositionSeries, window: int | None = None, order: int | None = None
) -> PositionSeries:
    """Savitzky-Golay 加速度估计：窗口内三次多项式拟合后取二阶导；边缘使用平移窗口"""
    window = window or config.savgol_window
    order = order or config.savgol_order
    values = np.asarray(series.values, dtype=float)
    if len(values) < window:
        raise InputError(f"series of length {len(values)} is shorter than the filter window {window}")
    acceleration = savgol_filter(values, window, order, deriv=2, delta=series.h, mode="interp")
    return PositionSeries(acceleration, series.h)
