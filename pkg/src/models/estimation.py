"""
状态估计与 L/K 交替优化

- 观测模型：y_n = H_n x_n + G_n ξ_n，G_n 为对角矩阵
- 前向过程：给定反馈增益，计算非自适应卡尔曼增益 K_n = A E Hᵀ (H E Hᵀ + G Gᵀ)⁺，
  同时精确传播 (x, x̂) 的联合矩
- 交替优化：K ≡ 0 起步，反向求 L、前向求 K，直到目标函数相对改进低于阈值
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.config import config
from src.dynamics import LinearSystem, error_second_moment, propagate_joint
from src.exceptions import ContractViolationError, SolverDivergenceError
from src.models.base import ControlLaw
from src.models.riccati import solve_riccati
from src.utils import logger, psd_pinv, psd_sqrt


class SolverOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default_factory=lambda: config.lqg_max_iterations, ge=1, description="最大迭代次数")
    tolerance: float = Field(default_factory=lambda: config.lqg_tolerance, gt=0, description="相对改进阈值 ε_J")


class ObservationModel(ABC):
    """观测模型基类"""

    @property
    @abstractmethod
    def dim(self) -> int:
        pass

    @abstractmethod
    def matrix(self, n: int) -> np.ndarray:
        """第 n 步的观测矩阵 H_n (l×k)"""
        pass

    @abstractmethod
    def noise_std(self, n: int, states: np.ndarray) -> np.ndarray:
        """第 n 步各观测通道的噪声标准差；states 为 (batch, k)，返回 (batch, l)"""
        pass

    def noise_covariance(self, n: int, state: np.ndarray) -> np.ndarray:
        """沿给定状态（通常为均值）求 G_n Gᵀ_n"""
        std = self.noise_std(n, np.atleast_2d(state))[0]
        return np.diag(std**2)


class ConstantObservation(ObservationModel):
    """H 与 G 不随时间、状态变化"""

    def __init__(self, matrix: np.ndarray, noise_std: np.ndarray):
        self._matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        self._std = np.asarray(noise_std, dtype=float).reshape(-1)
        if self._std.size != self._matrix.shape[0]:
            raise ContractViolationError(
                f"observation has {self._matrix.shape[0]} channels but {self._std.size} noise levels"
            )

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def matrix(self, n: int) -> np.ndarray:
        return self._matrix

    def noise_std(self, n: int, states: np.ndarray) -> np.ndarray:
        return np.broadcast_to(self._std, (states.shape[0], self._std.size))


@dataclass(frozen=True)
class InitialBelief:
    """真实初始状态分布 N(x̄0, Σ0) 与估计器初值 x̂0"""

    mean: np.ndarray
    covariance: np.ndarray
    estimate: np.ndarray

    def joint(self) -> tuple[np.ndarray, np.ndarray]:
        k = self.mean.size
        mean = np.concatenate([self.mean, self.estimate])
        cov = np.zeros((2 * k, 2 * k))
        cov[:k, :k] = self.covariance
        return mean, cov


@dataclass(frozen=True)
class ForwardPass:
    kalman_gains: np.ndarray
    observation_matrices: np.ndarray
    observation_noise: np.ndarray
    means: np.ndarray
    covariances: np.ndarray


def forward_pass(
    system: LinearSystem,
    gains: np.ndarray,
    observation: ObservationModel,
    sigma_u: float,
    belief: InitialBelief,
    kalman_gains: np.ndarray | None = None,
) -> ForwardPass:
    """沿闭环传播联合矩；kalman_gains 为 None 时逐步计算最优非自适应增益"""
    k, l = system.k, observation.dim
    N = gains.shape[0]
    A = system.A
    compute_gains = kalman_gains is None
    K_seq = np.empty((N, k, l)) if compute_gains else np.asarray(kalman_gains, dtype=float)
    H_seq = np.empty((N, l, k))
    noise_seq = np.empty((N, l, l))
    means = np.empty((N + 1, 2 * k))
    covs = np.empty((N + 1, 2 * k, 2 * k))
    means[0], covs[0] = belief.joint()

    for n in range(N):
        H = observation.matrix(n)
        noise = observation.noise_covariance(n, means[n, :k])
        if compute_gains:
            E = error_second_moment(means[n], covs[n], k)
            K_seq[n] = A @ E @ H.T @ psd_pinv(H @ E @ H.T + noise)
        H_seq[n] = H
        noise_seq[n] = noise
        means[n + 1], covs[n + 1] = propagate_joint(
            system, means[n], covs[n], gains[n], K_seq[n], H, noise, sigma_u
        )
    return ForwardPass(K_seq, H_seq, noise_seq, means, covs)


def expected_cost(
    state_costs: np.ndarray, control_cost, gains: np.ndarray, means: np.ndarray, covs: np.ndarray
) -> float:
    """E[Σ xᵀ Q_n x + Σ uᵀ R u]，u = −L x̂"""
    k = state_costs.shape[1]
    R = np.atleast_2d(control_cost)
    x_second = covs[:, :k, :k] + np.einsum("ni,nj->nij", means[:, :k], means[:, :k])
    xhat_second = covs[:-1, k:, k:] + np.einsum("ni,nj->nij", means[:-1, k:], means[:-1, k:])
    state_part = np.einsum("nij,nji->", state_costs, x_second)
    effort = np.einsum("nmi,nij,nkj->nmk", gains, xhat_second, gains)
    control_part = np.einsum("mk,nkm->", R, effort)
    return float(state_part + control_part)


def solve_coordinate_descent(
    system: LinearSystem,
    state_costs: np.ndarray,
    control_cost,
    observation: ObservationModel,
    sigma_u: float,
    belief: InitialBelief,
    options: SolverOptions | None = None,
) -> ControlLaw:
    """反馈增益与卡尔曼增益的交替优化

    若某次迭代使目标函数上升，则恢复上一组增益并停止。

    Raises:
        SolverDivergenceError: 目标函数出现非有限值
    """
    options = options or SolverOptions()
    k, l = system.k, observation.dim
    N = state_costs.shape[0] - 1
    kalman_gains = np.zeros((N, k, l))
    observation_matrices = np.stack([observation.matrix(n) for n in range(N)])

    history: list[float] = []
    best: tuple[np.ndarray, np.ndarray, ForwardPass] | None = None
    converged = False
    iteration = 0
    for iteration in range(1, options.max_iterations + 1):
        try:
            gains, cost_to_go = solve_riccati(
                system, state_costs, control_cost, sigma_u, kalman_gains, observation_matrices
            )
        except SolverDivergenceError as e:
            raise SolverDivergenceError(e.message, iteration) from e
        forward = forward_pass(system, gains, observation, sigma_u, belief)
        cost = expected_cost(state_costs, control_cost, gains, forward.means, forward.covariances)
        if not np.isfinite(cost) or not np.all(np.isfinite(forward.kalman_gains)):
            raise SolverDivergenceError("non-finite expected cost", iteration)

        if history:
            previous = history[-1]
            change = (previous - cost) / abs(previous) if previous != 0 else previous - cost
            if cost > previous:
                logger.debug("Coordinate descent stalled at iteration {}: J {} -> {}", iteration, previous, cost)
                converged = -change <= options.tolerance
                iteration -= 1
                break
            best = (gains, cost_to_go, forward)
            history.append(cost)
            logger.debug("Coordinate descent iteration {}: J = {:.6e}", iteration, cost)
            if change <= options.tolerance:
                converged = True
                break
        else:
            best = (gains, cost_to_go, forward)
            history.append(cost)
            logger.debug("Coordinate descent iteration {}: J = {:.6e}", iteration, cost)

        kalman_gains = forward.kalman_gains
        observation_matrices = forward.observation_matrices

    if not converged:
        logger.warning("Coordinate descent did not converge after {} iterations (J = {})", iteration, history[-1])

    gains, cost_to_go, forward = best
    return ControlLaw(
        gains=gains,
        kalman_gains=forward.kalman_gains,
        observation_matrices=forward.observation_matrices,
        observation_noise=forward.observation_noise,
        cost_to_go=cost_to_go,
        converged=converged,
        iterations=iteration,
        cost=history[-1],
        cost_history=tuple(history),
    )


def simulate_closed_loop(
    system: LinearSystem,
    law: ControlLaw,
    observation: ObservationModel | None,
    sigma_u: float,
    belief: InitialBelief,
    count: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """批量随机仿真，返回真实状态 (N+1, count, k)、执行的控制 (N, count, m) 与估计 (N+1, count, k)

    每步随机数的抽取顺序固定：控制噪声 η，然后观测噪声 ξ。无卡尔曼增益时估计等于真实状态。
    """
    k, m = system.k, system.m
    A, B = system.A, system.B
    N = law.N
    states = np.empty((N + 1, count, k))
    controls = np.empty((N, count, m))
    estimates = np.empty((N + 1, count, k))

    x = belief.mean + rng.standard_normal((count, k)) @ psd_sqrt(belief.covariance).T
    with_estimator = law.kalman_gains is not None and observation is not None
    xhat = np.broadcast_to(belief.estimate, (count, k)).copy() if with_estimator else x.copy()
    states[0], estimates[0] = x, xhat

    for n in range(N):
        L = law.gains[n]
        u = -xhat @ L.T
        eta = rng.standard_normal((count, 1))
        executed = (1.0 + sigma_u * eta) * u
        x_next = x @ A.T + executed @ B.T
        if with_estimator:
            H = law.observation_matrices[n]
            xi = rng.standard_normal((count, observation.dim))
            y = x @ H.T + observation.noise_std(n, x) * xi
            xhat = xhat @ A.T + u @ B.T + (y - xhat @ H.T) @ law.kalman_gains[n].T
        else:
            xhat = x_next.copy()
        x = x_next
        states[n + 1], estimates[n + 1], controls[n] = x, xhat, executed
    return states, controls, estimates
