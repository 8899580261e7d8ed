"""
高斯状态分布与闭环矩传播

带估计器的闭环把真实状态 x 与估计 x̂ 拼成 z = (x, x̂)，在 2k 维上传播均值与协方差：

    x'  = A x − B L x̂ − σu η B L x̂
    x̂' = K H x + (A − B L − K H) x̂ + K G ξ

信号相关噪声项取决于 x̂ 的二阶原点矩，因此协方差更新是精确的。对外只暴露 x 的边缘分布。
"""

from dataclasses import dataclass

import numpy as np

from src.config import config
from src.dynamics.layout import StateLayout
from src.dynamics.system import LinearSystem, _freeze
from src.exceptions import ContractViolationError
from src.utils import as_matrix, as_vector, clamp_psd, symmetrize


@dataclass(frozen=True)
class StateDistribution:
    """x ~ N(mean, covariance)；构造时对称化，微小负特征值截断为 0"""

    mean: np.ndarray
    covariance: np.ndarray
    layout: StateLayout | None = None

    def __post_init__(self):
        mean = as_vector(self.mean, "mean")
        cov = as_matrix(self.covariance, "covariance")
        if cov.shape != (mean.size, mean.size):
            raise ContractViolationError(f"covariance shape {cov.shape} does not match mean length {mean.size}")
        layout = self.layout or StateLayout.generic(mean.size)
        if layout.size != mean.size:
            raise ContractViolationError(f"layout has {layout.size} components, mean has {mean.size}")
        object.__setattr__(self, "mean", _freeze(mean))
        object.__setattr__(self, "covariance", _freeze(clamp_psd(cov, config.psd_tolerance)))
        object.__setattr__(self, "layout", layout)

    @property
    def k(self) -> int:
        return self.mean.size

    def second_moment(self) -> np.ndarray:
        return self.covariance + np.outer(self.mean, self.mean)

    def std(self, name: str) -> float:
        i = self.layout.index(name)
        return float(np.sqrt(self.covariance[i, i]))


@dataclass(frozen=True)
class DistributionTrajectory:
    """逐步高斯分布序列（N+1 步）

    control_means 为各步平均控制；estimate_means / estimate_covariances 为估计器 x̂ 的分布（若有）。
    """

    means: np.ndarray
    covariances: np.ndarray
    h: float
    layout: StateLayout
    control_means: np.ndarray | None = None
    estimate_means: np.ndarray | None = None
    estimate_covariances: np.ndarray | None = None

    def __post_init__(self):
        means = np.asarray(self.means, dtype=float)
        covs = np.asarray(self.covariances, dtype=float)
        k = self.layout.size
        if means.ndim != 2 or means.shape[1] != k:
            raise ContractViolationError(f"means must be (N+1, {k}), got {means.shape}")
        if covs.shape != (means.shape[0], k, k):
            raise ContractViolationError(f"covariances must be ({means.shape[0]}, {k}, {k}), got {covs.shape}")
        if not (np.all(np.isfinite(means)) and np.all(np.isfinite(covs))):
            raise ContractViolationError("distribution trajectory contains non-finite entries")
        covs = np.stack([clamp_psd(c, config.psd_tolerance) for c in covs])
        object.__setattr__(self, "means", _freeze(means))
        object.__setattr__(self, "covariances", _freeze(covs))
        for name in ("control_means", "estimate_means", "estimate_covariances"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _freeze(value))

    @property
    def N(self) -> int:
        return self.means.shape[0] - 1

    @property
    def steps(self) -> list[StateDistribution]:
        return [StateDistribution(m, c, self.layout) for m, c in zip(self.means, self.covariances)]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.h

    def component_mean(self, name: str) -> np.ndarray:
        return self.means[:, self.layout.index(name)]

    def component_std(self, name: str) -> np.ndarray:
        i = self.layout.index(name)
        return np.sqrt(np.clip(self.covariances[:, i, i], 0.0, None))

    def marginal(self, names) -> tuple[np.ndarray, np.ndarray]:
        """返回指定分量的 (均值 (N+1, j), 协方差 (N+1, j, j))"""
        idx = self.layout.indices(names)
        return self.means[:, idx], self.covariances[:, idx][:, :, idx]


def propagate_moments(system: LinearSystem, dist: StateDistribution, gain, sigma_u: float) -> StateDistribution:
    """精确状态反馈 u = −L x 下的一步矩传播

    均值按 A μ + B(−L μ) 计算，与 rollout 的算术一致。
    """
    if sigma_u < 0:
        raise ContractViolationError(f"sigma_u must be nonnegative, got {sigma_u}")
    L = as_matrix(gain, "gain")
    if L.shape != (system.m, system.k):
        raise ContractViolationError(f"gain must be {system.m}x{system.k}, got {L.shape}")
    if dist.k != system.k:
        raise ContractViolationError(f"distribution has {dist.k} components, system expects {system.k}")

    A, B = system.A, system.B
    mean = A @ dist.mean + B @ (-L @ dist.mean)
    closed = A - B @ L
    BL = B @ L
    cov = closed @ dist.covariance @ closed.T + sigma_u**2 * BL @ dist.second_moment() @ BL.T
    return StateDistribution(mean, symmetrize(cov), system.layout)


def error_second_moment(joint_mean: np.ndarray, joint_cov: np.ndarray, k: int) -> np.ndarray:
    """估计误差 e = x − x̂ 的二阶原点矩 E[e eᵀ]"""
    diff = np.hstack([np.eye(k), -np.eye(k)])
    e_mean = diff @ joint_mean
    return symmetrize(diff @ joint_cov @ diff.T + np.outer(e_mean, e_mean))


def propagate_joint(
    system: LinearSystem,
    joint_mean: np.ndarray,
    joint_cov: np.ndarray,
    gain: np.ndarray,
    kalman_gain: np.ndarray,
    observation: np.ndarray,
    observation_noise: np.ndarray,
    sigma_u: float,
) -> tuple[np.ndarray, np.ndarray]:
    """真实状态与估计的联合一步传播

    Args:
        gain: 反馈增益 L (m×k)
        kalman_gain: 卡尔曼增益 K (k×l)
        observation: 观测矩阵 H (l×k)
        observation_noise: 观测噪声协方差 G Gᵀ (l×l)
    """
    k = system.k
    A, B = system.A, system.B
    L, K, H = gain, kalman_gain, observation
    x_mean, xhat_mean = joint_mean[:k], joint_mean[k:]

    u_mean = -L @ xhat_mean
    next_mean = np.empty(2 * k)
    next_mean[:k] = A @ x_mean + B @ u_mean
    next_mean[k:] = A @ xhat_mean + B @ u_mean + K @ (H @ x_mean - H @ xhat_mean)

    BL = B @ L
    KH = K @ H
    transition = np.block([[A, -BL], [KH, A - BL - KH]])
    next_cov = transition @ joint_cov @ transition.T

    xhat_cov = joint_cov[k:, k:]
    next_cov[:k, :k] += sigma_u**2 * BL @ (xhat_cov + np.outer(xhat_mean, xhat_mean)) @ BL.T
    next_cov[k:, k:] += K @ observation_noise @ K.T
    return next_mean, symmetrize(next_cov)
