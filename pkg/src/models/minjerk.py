"""
离散最小加加速度（MinJerk）轨迹

五次多项式 x(s) = Σ c_i s^i，s = n / N_MJ，t_f = N_MJ · h；系数由边界状态线性给出。
冲刺段之后保持终点状态。
"""

import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from src.dynamics import ACCELERATION, MINJERK, Trajectory
from src.exceptions import ParameterError
from src.models.base import PointingModel
from src.models.params import MinJerkParams, build_params, pick_fields
from src.models.task import MuscleConfig, TaskSpec


@dataclass(frozen=True)
class MinJerkBoundary:
    """起点与终点的 (位置, 速度, 加速度)"""

    initial: tuple[float, float, float]
    final: tuple[float, float, float]

    @classmethod
    def from_task(cls, task: TaskSpec) -> "MinJerkBoundary":
        return cls((task.start, task.start_velocity, task.start_acceleration), (task.target, 0.0, 0.0))

    def as_vector(self) -> np.ndarray:
        values = np.array([*self.initial, *self.final], dtype=float)
        if values.shape != (6,) or not np.all(np.isfinite(values)):
            raise ParameterError("MinJerk boundary must hold six finite values")
        return values


def coefficient_matrix(t_f: float) -> np.ndarray:
    """(p0, v0, a0, pN, vN, aN) → (c0, ..., c5)"""
    t2 = t_f * t_f
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, t_f, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.5 * t2, 0.0, 0.0, 0.0],
            [-10.0, -6.0 * t_f, -1.5 * t2, 10.0, -4.0 * t_f, 0.5 * t2],
            [15.0, 8.0 * t_f, 1.5 * t2, -15.0, 7.0 * t_f, -t2],
            [-6.0, -3.0 * t_f, -0.5 * t2, 6.0, -3.0 * t_f, 0.5 * t2],
        ]
    )


def minjerk_polynomial(boundary: MinJerkBoundary, t_f: float) -> Polynomial:
    """归一化时间 s ∈ [0, 1] 上的位置多项式"""
    return Polynomial(coefficient_matrix(t_f) @ boundary.as_vector())


def minjerk_trajectory(p: MinJerkParams, task: TaskSpec, boundary: MinJerkBoundary | None = None) -> Trajectory:
    """状态 (位置, 速度, 加速度)；控制通道记录多项式的加加速度"""
    boundary = boundary or MinJerkBoundary.from_task(task)
    n_mj = p.n_mj
    if n_mj > task.N:
        raise ParameterError(f"n_mj={n_mj} exceeds task length N={task.N}")

    final = np.asarray(boundary.final, dtype=float)
    states = np.tile(final, (task.N + 1, 1))
    controls = np.zeros((task.N, 1))
    if n_mj == 0:
        return Trajectory(states, controls, task.h, MINJERK)

    t_f = n_mj * task.h
    position = minjerk_polynomial(boundary, t_f)
    velocity = position.deriv(1)
    acceleration = position.deriv(2)
    jerk = position.deriv(3)

    last = min(math.ceil(n_mj), task.N)
    s = np.minimum(np.arange(last + 1) / n_mj, 1.0)
    states[: last + 1, 0] = position(s)
    states[: last + 1, 1] = velocity(s) / t_f
    states[: last + 1, 2] = acceleration(s) / t_f**2
    surge = min(last + 1, task.N)
    controls[:surge, 0] = jerk(s[:surge]) / t_f**3
    return Trajectory(states, controls, task.h, MINJERK)


class MinJerkModel(PointingModel):
    name = "minjerk"
    parameter_names = ("n_mj",)

    def __init__(self, params: MinJerkParams, boundary: MinJerkBoundary | None = None):
        self.params = params
        self.boundary = boundary

    @classmethod
    def from_params(cls, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> "MinJerkModel":
        return cls(build_params(MinJerkParams, pick_fields(params, MinJerkParams)))

    def params_dict(self) -> dict[str, float]:
        return {"n_mj": self.params.n_mj}

    def simulate(self, task: TaskSpec) -> Trajectory:
        return minjerk_trajectory(self.params, task, self.boundary)

    def acceleration(self, trajectory: Trajectory) -> np.ndarray:
        return trajectory.component(ACCELERATION)
