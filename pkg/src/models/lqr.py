"""线性二次调节器（确定性最优状态反馈）"""

from collections.abc import Mapping

import numpy as np

from src.dynamics import (
    FORCE,
    DistributionTrajectory,
    LinearSystem,
    StateDistribution,
    Trajectory,
    propagate_moments,
)
from src.models.base import ControlLaw, PointingModel
from src.models.estimation import InitialBelief, simulate_closed_loop
from src.models.muscle import CostSchedule, build_muscle_system, control_cost, state_cost_schedule
from src.models.params import LQCostWeights, build_params, pick_fields
from src.models.riccati import solve_riccati
from src.models.task import MuscleConfig, TaskSpec
from src.utils import logger


def solve_lqr(
    weights: LQCostWeights,
    task: TaskSpec,
    muscle: MuscleConfig | None = None,
    schedule: CostSchedule = "continuous",
) -> ControlLaw:
    system = build_muscle_system(task.h, muscle)
    Q = state_cost_schedule(system.layout, weights, task.N, schedule)
    R = control_cost(weights, task.N)
    gains, cost_to_go = solve_riccati(system, Q, R)
    x0 = task.x0_mean(system.layout).values
    cost = float(x0 @ cost_to_go[0] @ x0)
    logger.debug("LQR solved: N={}, J={:.6e}", task.N, cost)
    return ControlLaw(gains=gains, cost_to_go=cost_to_go, cost=cost, cost_history=(cost,))


def closed_loop_rollout(system: LinearSystem, gains: np.ndarray, x0: np.ndarray) -> Trajectory:
    """u_n = −L_n x_n"""
    N = gains.shape[0]
    states = np.empty((N + 1, system.k))
    controls = np.empty((N, system.m))
    states[0] = x0
    for n in range(N):
        controls[n] = -gains[n] @ states[n]
        states[n + 1] = system.A @ states[n] + system.B @ controls[n]
    return Trajectory(states, controls, system.h, system.layout)


def lqr_cost(system: LinearSystem, gains: np.ndarray, x0: np.ndarray, state_costs: np.ndarray, control_cost) -> float:
    """任意增益序列下的有限时域代价 Σ xᵀ Q_n x + Σ uᵀ R u"""
    trajectory = closed_loop_rollout(system, gains, np.asarray(x0, dtype=float))
    R = np.atleast_2d(control_cost)
    x = trajectory.values
    u = trajectory.controls
    return float(np.einsum("ni,nij,nj->", x, state_costs, x) + np.einsum("ni,ij,nj->", u, R, u))


class LQRModel(PointingModel):
    name = "lqr"
    parameter_names = ("omega_r", "omega_v", "omega_f")

    def __init__(
        self,
        weights: LQCostWeights,
        muscle: MuscleConfig | None = None,
        schedule: CostSchedule = "continuous",
    ):
        self.weights = weights
        self.muscle = muscle or MuscleConfig()
        self.schedule = schedule

    @classmethod
    def from_params(cls, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> "LQRModel":
        return cls(build_params(LQCostWeights, pick_fields(params, LQCostWeights)), muscle)

    def params_dict(self) -> dict[str, float]:
        return self.weights.model_dump()

    def system(self, task: TaskSpec) -> LinearSystem:
        return build_muscle_system(task.h, self.muscle)

    def solve(self, task: TaskSpec) -> ControlLaw:
        return solve_lqr(self.weights, task, self.muscle, self.schedule)

    def simulate(self, task: TaskSpec, law: ControlLaw | None = None) -> Trajectory:
        law = law or self.solve(task)
        system = self.system(task)
        return closed_loop_rollout(system, law.gains, task.x0_mean(system.layout).values)

    def acceleration(self, trajectory: Trajectory) -> np.ndarray:
        return trajectory.component(FORCE) / self.muscle.mass

    def predict_distribution(self, task: TaskSpec, law: ControlLaw | None = None) -> DistributionTrajectory:
        """初始协方差在精确状态反馈下传播"""
        law = law or self.solve(task)
        system = self.system(task)
        dist = StateDistribution(task.x0_mean(system.layout).values, task.x0_cov(system.layout), system.layout)
        means = [dist.mean]
        covs = [dist.covariance]
        controls = []
        for L in law.gains:
            controls.append(-L @ dist.mean)
            dist = propagate_moments(system, dist, L, 0.0)
            means.append(dist.mean)
            covs.append(dist.covariance)
        return DistributionTrajectory(
            np.array(means), np.array(covs), task.h, system.layout, control_means=np.array(controls)
        )

    def sample_ensemble(self, task: TaskSpec, count: int, seed: int, law: ControlLaw | None = None) -> list[Trajectory]:
        law = law or self.solve(task)
        system = self.system(task)
        belief = InitialBelief(
            task.x0_mean(system.layout).values, task.x0_cov(system.layout), task.x0_mean(system.layout).values
        )
        states, controls, _ = simulate_closed_loop(system, law, None, 0.0, belief, count, np.random.default_rng(seed))
        return [Trajectory(states[:, i], controls[:, i], task.h, system.layout) for i in range(count)]
