"""
带信号相关控制噪声的 LQG

    x_{n+1} = A x_n + (1 + σu η_n) B u_n
    y_n     = H x_n + G ξ_n,   H 选取 (p, v, f)，G = σs · diag(0.02, 0.2, 1)
"""

from abc import abstractmethod
from collections.abc import Mapping

import numpy as np

from src.dynamics import FORCE, POSITION, VELOCITY, DistributionTrajectory, LinearSystem, Trajectory
from src.models.base import ControlLaw, PointingModel
from src.models.estimation import (
    ConstantObservation,
    InitialBelief,
    ObservationModel,
    SolverOptions,
    forward_pass,
    simulate_closed_loop,
    solve_coordinate_descent,
)
from src.models.muscle import CostSchedule, build_muscle_system, control_cost, state_cost_schedule
from src.models.params import LQCostWeights, LQGNoiseParams, build_params, pick_fields
from src.models.task import MuscleConfig, TaskSpec
from src.utils import logger

OBSERVATION_SCALES = np.array([0.02, 0.2, 1.0])


def lqg_observation(system: LinearSystem, noise: LQGNoiseParams) -> ConstantObservation:
    H = np.zeros((3, system.k))
    for row, index in enumerate(system.layout.indices((POSITION, VELOCITY, FORCE))):
        H[row, index] = 1.0
    return ConstantObservation(H, noise.sigma_s * OBSERVATION_SCALES)


def solve_lqg(
    weights: LQCostWeights,
    noise: LQGNoiseParams,
    task: TaskSpec,
    muscle: MuscleConfig | None = None,
    options: SolverOptions | None = None,
    schedule: CostSchedule = "terminal",
) -> ControlLaw:
    return LQGModel(weights, noise, muscle=muscle, options=options, schedule=schedule).solve(task)


class StochasticModel(PointingModel):
    """LQG 类模型的公共部分：平均轨迹、分布预测与采样"""

    stochastic = True

    def __init__(
        self,
        weights: LQCostWeights,
        muscle: MuscleConfig | None = None,
        options: SolverOptions | None = None,
        schedule: CostSchedule = "terminal",
    ):
        self.weights = weights
        self.muscle = muscle or MuscleConfig()
        self.options = options or SolverOptions()
        self.schedule = schedule

    @property
    @abstractmethod
    def sigma_u(self) -> float:
        pass

    @abstractmethod
    def system(self, task: TaskSpec) -> LinearSystem:
        pass

    @abstractmethod
    def observation(self, system: LinearSystem) -> ObservationModel:
        pass

    def belief(self, task: TaskSpec, system: LinearSystem) -> InitialBelief:
        x0 = task.x0_mean(system.layout).values
        return InitialBelief(x0, task.x0_cov(system.layout), x0)

    def solve(self, task: TaskSpec) -> ControlLaw:
        system = self.system(task)
        Q = state_cost_schedule(system.layout, self.weights, task.N, self.schedule)
        law = solve_coordinate_descent(
            system,
            Q,
            control_cost(self.weights, task.N),
            self.observation(system),
            self.sigma_u,
            self.belief(task, system),
            self.options,
        )
        logger.debug(
            "{} solved in {} iterations (converged={}, J={:.6e})", self.name, law.iterations, law.converged, law.cost
        )
        return law

    def predict_distribution(self, task: TaskSpec, law: ControlLaw | None = None) -> DistributionTrajectory:
        """联合传播 (x, x̂) 后取 x 的边缘分布"""
        law = law or self.solve(task)
        system = self.system(task)
        k = system.k
        forward = forward_pass(
            system, law.gains, self.observation(system), self.sigma_u, self.belief(task, system), law.kalman_gains
        )
        control_means = -np.einsum("nmk,nk->nm", law.gains, forward.means[:-1, k:])
        return DistributionTrajectory(
            forward.means[:, :k],
            forward.covariances[:, :k, :k],
            task.h,
            system.layout,
            control_means=control_means,
            estimate_means=forward.means[:, k:],
            estimate_covariances=forward.covariances[:, k:, k:],
        )

    def simulate(self, task: TaskSpec, law: ControlLaw | None = None) -> Trajectory:
        """平均轨迹"""
        dist = self.predict_distribution(task, law)
        return Trajectory(dist.means, dist.control_means, task.h, dist.layout, estimates=dist.estimate_means)

    def acceleration(self, trajectory: Trajectory) -> np.ndarray:
        return trajectory.component(FORCE) / self.muscle.mass

    def sample_ensemble(self, task: TaskSpec, count: int, seed: int, law: ControlLaw | None = None) -> list[Trajectory]:
        """count 条随机轨迹；给定 (seed, 参数) 结果确定"""
        law = law or self.solve(task)
        system = self.system(task)
        states, controls, estimates = simulate_closed_loop(
            system,
            law,
            self.observation(system),
            self.sigma_u,
            self.belief(task, system),
            count,
            np.random.default_rng(seed),
        )
        return [
            Trajectory(states[:, i], controls[:, i], task.h, system.layout, estimates=estimates[:, i])
            for i in range(count)
        ]


class LQGModel(StochasticModel):
    name = "lqg"
    parameter_names = ("omega_r", "omega_v", "omega_f", "sigma_u", "sigma_s")

    def __init__(self, weights: LQCostWeights, noise: LQGNoiseParams, **kwargs):
        super().__init__(weights, **kwargs)
        self.noise = noise

    @property
    def sigma_u(self) -> float:
        return self.noise.sigma_u

    @classmethod
    def from_params(cls, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> "LQGModel":
        values = dict(params)
        weights = build_params(LQCostWeights, pick_fields(values, LQCostWeights))
        noise = build_params(LQGNoiseParams, pick_fields(values, LQGNoiseParams))
        return cls(weights, noise, muscle=muscle)

    def params_dict(self) -> dict[str, float]:
        return {**self.weights.model_dump(), **self.noise.model_dump()}

    def system(self, task: TaskSpec) -> LinearSystem:
        return build_muscle_system(task.h, self.muscle)

    def observation(self, system: LinearSystem) -> ObservationModel:
        return lqg_observation(system, self.noise)
