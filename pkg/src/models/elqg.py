"""
扩展观测模型的 LQG（E-LQG）

状态 (p, v, f, g, T0, T)。扫视前注视初始位置 T0，之后注视目标 T；
位置类观测的噪声与注视点的距离成正比。估计器的初始目标分量取 T0。
"""

import math
from collections.abc import Mapping

import numpy as np

from src.dynamics import (
    EXTENDED_MUSCLE,
    FORCE,
    INITIAL_POSITION,
    POSITION,
    TARGET,
    VELOCITY,
    LinearSystem,
    StateLayout,
)
from src.exceptions import ParameterError
from src.models.base import ControlLaw
from src.models.estimation import InitialBelief, ObservationModel, SolverOptions
from src.models.lqg import StochasticModel
from src.models.muscle import CostSchedule, build_muscle_system
from src.models.params import ELQGParams, LQCostWeights, build_params, pick_fields
from src.models.task import MuscleConfig, TaskSpec


def _observation_rows(layout: StateLayout, fixation: str, other: str) -> np.ndarray:
    """(v, f, 注视点, p − 注视点, 另一位置 − 注视点)"""
    p, v, f, c, o = layout.indices((POSITION, VELOCITY, FORCE, fixation, other))
    H = np.zeros((5, layout.size))
    H[0, v] = 1.0
    H[1, f] = 1.0
    H[2, c] = 1.0
    H[3, p], H[3, c] = 1.0, -1.0
    H[4, o], H[4, c] = 1.0, -1.0
    return H


class SaccadeObservation(ObservationModel):
    """扫视前后切换注视点的观测模型；扫视步 ⌊n_s⌋ 上取两者的凸组合"""

    def __init__(self, params: ELQGParams, layout: StateLayout = EXTENDED_MUSCLE):
        self.params = params
        self.layout = layout
        self.before = _observation_rows(layout, INITIAL_POSITION, TARGET)
        self.after = _observation_rows(layout, TARGET, INITIAL_POSITION)
        self._p, self._t0, self._t = layout.indices((POSITION, INITIAL_POSITION, TARGET))

    @property
    def dim(self) -> int:
        return 5

    def fixation_weight(self, n: int) -> float:
        """注视 T0 的权重：n < ⌊n_s⌋ 为 1，n > ⌊n_s⌋ 为 0，n = ⌊n_s⌋ 为 {n_s}"""
        floor = math.floor(self.params.n_s)
        if n < floor:
            return 1.0
        if n > floor:
            return 0.0
        return self.params.n_s - floor

    def matrix(self, n: int) -> np.ndarray:
        w = self.fixation_weight(n)
        if w == 1.0:
            return self.before
        if w == 0.0:
            return self.after
        return w * self.before + (1.0 - w) * self.after

    def noise_std(self, n: int, states: np.ndarray) -> np.ndarray:
        w = self.fixation_weight(n)
        p = states[:, self._p]
        t0 = states[:, self._t0]
        t = states[:, self._t]
        gap = np.abs(t - t0)
        eccentricity = w * np.abs(p - t0) + (1.0 - w) * np.abs(p - t)
        prm = self.params
        std = np.empty((states.shape[0], 5))
        std[:, 0] = prm.sigma_v
        std[:, 1] = prm.sigma_f
        std[:, 2] = prm.sigma_e
        std[:, 3] = prm.gamma * eccentricity
        std[:, 4] = prm.gamma * gap
        return std


class ELQGModel(StochasticModel):
    name = "elqg"
    parameter_names = ("omega_r", "omega_v", "omega_f", "sigma_u", "sigma_v", "sigma_f", "sigma_e", "gamma", "n_s")

    def __init__(self, weights: LQCostWeights, params: ELQGParams, biased_target_estimate: bool = True, **kwargs):
        super().__init__(weights, **kwargs)
        self.params = params
        self.biased_target_estimate = biased_target_estimate

    @property
    def sigma_u(self) -> float:
        return self.params.sigma_u

    @classmethod
    def from_params(cls, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> "ELQGModel":
        values = dict(params)
        weights = build_params(LQCostWeights, pick_fields(values, LQCostWeights))
        noise = build_params(ELQGParams, pick_fields(values, ELQGParams))
        return cls(weights, noise, muscle=muscle)

    def params_dict(self) -> dict[str, float]:
        return {**self.weights.model_dump(), **self.params.model_dump()}

    def system(self, task: TaskSpec) -> LinearSystem:
        return build_muscle_system(task.h, self.muscle, extended=True)

    def observation(self, system: LinearSystem) -> ObservationModel:
        return SaccadeObservation(self.params, system.layout)

    def belief(self, task: TaskSpec, system: LinearSystem) -> InitialBelief:
        """真实初始状态带真实目标；估计器的目标分量取初始位置 T0"""
        x0 = task.x0_mean(system.layout).values
        estimate = x0.copy()
        if self.biased_target_estimate:
            estimate[system.layout.index(TARGET)] = task.initial_position
        return InitialBelief(x0, task.x0_cov(system.layout), estimate)

    def solve(self, task: TaskSpec) -> ControlLaw:
        if self.params.n_s > task.N:
            raise ParameterError(f"n_s={self.params.n_s} exceeds task length N={task.N}")
        return super().solve(task)


def solve_elqg(
    weights: LQCostWeights,
    p: ELQGParams,
    task: TaskSpec,
    muscle: MuscleConfig | None = None,
    options: SolverOptions | None = None,
    schedule: CostSchedule = "terminal",
    biased_target_estimate: bool = True,
) -> ControlLaw:
    model = ELQGModel(
        weights, p, biased_target_estimate=biased_target_estimate, muscle=muscle, options=options, schedule=schedule
    )
    return model.solve(task)
