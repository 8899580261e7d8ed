"""轨迹摘要统计：到达时间、峰值速度、终点离散度、越过目标"""

import numpy as np

from src.exceptions import InputError

OVERSHOOT_TOLERANCE = 1e-9


def _positions(positions) -> np.ndarray:
    values = np.asarray(positions, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise InputError("position series must be a non-empty 1-D array")
    return values


def time_to_target(positions, target: float, width: float, h: float) -> float:
    """首个满足 |p_n − T| ≤ W/2 的时刻 n·h；从未进入目标时为 NaN"""
    values = _positions(positions)
    inside = np.flatnonzero(np.abs(values - target) <= width / 2)
    if inside.size == 0:
        return float("nan")
    return float(inside[0] * h)


def half_distance_time(positions, start: float, target: float, h: float) -> float:
    """首次走完一半距离的时刻"""
    values = _positions(positions)
    halfway = start + 0.5 * (target - start)
    if target >= start:
        reached = np.flatnonzero(values >= halfway)
    else:
        reached = np.flatnonzero(values <= halfway)
    return float(reached[0] * h) if reached.size else float("nan")


def peak_velocity(velocities) -> float:
    """速度绝对值的最大值"""
    values = np.asarray(velocities, dtype=float)
    if values.size == 0:
        raise InputError("velocity series is empty")
    return float(np.max(np.abs(values)))


def terminal_std(position_std) -> float:
    values = np.asarray(position_std, dtype=float)
    if values.size == 0:
        raise InputError("std series is empty")
    return float(values[-1])


def has_overshoot(positions, start: float, target: float) -> bool:
    """位置越过目标（相对运动方向）超过数值容差"""
    values = _positions(positions)
    direction = np.sign(target - start) or 1.0
    return bool(np.any(direction * (values - target) > OVERSHOOT_TOLERANCE))
