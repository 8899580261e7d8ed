"""二阶滞后模型，平衡点控制 u ≡ kT"""

from collections.abc import Mapping

import numpy as np

from src.dynamics import POSITION, TWO_OL, VELOCITY, DistributionTrajectory, LinearSystem, Trajectory, rollout
from src.models.base import PointingModel
from src.models.params import TwoOLParams, build_params
from src.models.task import MuscleConfig, TaskSpec
from src.utils import symmetrize


def build_2ol_system(p: TwoOLParams, h: float) -> LinearSystem:
    """A = [[1, h], [−hk, 1−hd]]，B = [0, h]ᵀ"""
    A = np.array([[1.0, h], [-h * p.k, 1.0 - h * p.d]])
    B = np.array([[0.0], [h]])
    return LinearSystem(A, B, h, TWO_OL)


def simulate_2ol_eq(p: TwoOLParams, task: TaskSpec) -> Trajectory:
    system = build_2ol_system(p, task.h)
    controls = np.full((task.N, 1), p.k * task.target)
    return rollout(system, task.x0_mean(TWO_OL), controls)


class SecondOrderLagModel(PointingModel):
    name = "2ol-eq"
    parameter_names = ("k", "d")

    def __init__(self, params: TwoOLParams):
        self.params = params

    @classmethod
    def from_params(cls, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> "SecondOrderLagModel":
        values = dict(params)
        if "zeta" in values and "d" not in values:
            return cls(TwoOLParams.from_damping_ratio(values["k"], values["zeta"]))
        values.pop("zeta", None)
        return cls(build_params(TwoOLParams, values))

    def params_dict(self) -> dict[str, float]:
        return {"k": self.params.k, "d": self.params.d, "zeta": self.params.zeta}

    def simulate(self, task: TaskSpec) -> Trajectory:
        return simulate_2ol_eq(self.params, task)

    def acceleration(self, trajectory: Trajectory) -> np.ndarray:
        p = trajectory.component(POSITION)
        v = trajectory.component(VELOCITY)
        u = np.append(trajectory.controls[:, 0], trajectory.controls[-1, 0])
        return u - self.params.k * p - self.params.d * v

    def predict_distribution(self, task: TaskSpec, law=None) -> DistributionTrajectory:
        """开环控制下初始协方差按 A Σ Aᵀ 传播"""
        trajectory = self.simulate(task)
        A = build_2ol_system(self.params, task.h).A
        covs = np.empty((task.N + 1, 2, 2))
        covs[0] = task.x0_cov(TWO_OL)
        for n in range(task.N):
            covs[n + 1] = symmetrize(A @ covs[n] @ A.T)
        return DistributionTrajectory(trajectory.values, covs, task.h, TWO_OL, control_means=trajectory.controls)
