"""比较用的时间序列值类型"""

from dataclasses import dataclass

import numpy as np

from src.config import config
from src.dynamics import POSITION, VELOCITY, DistributionTrajectory
from src.exceptions import ContractViolationError, InputError
from src.utils import clamp_psd


@dataclass(frozen=True)
class PositionSeries:
    """等步长标量序列（位置、速度或加速度）"""

    values: np.ndarray
    h: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ContractViolationError(f"series must be 1-D, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ContractViolationError("series contains non-finite values")
        if not self.h > 0:
            raise ContractViolationError(f"step size must be positive, got {self.h}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def clip(self, length: int) -> "PositionSeries":
        return PositionSeries(self.values[:length], self.h)


@dataclass(frozen=True)
class GaussianSeries:
    """每步 (位置, 速度) 的二维高斯分布"""

    means: np.ndarray
    covariances: np.ndarray
    h: float

    def __post_init__(self):
        means = np.asarray(self.means, dtype=float)
        covs = np.asarray(self.covariances, dtype=float)
        if means.ndim != 2 or means.shape[1] != 2:
            raise ContractViolationError(f"means must have shape (N+1, 2), got {means.shape}")
        if covs.shape != (len(means), 2, 2):
            raise ContractViolationError(f"covariances must have shape ({len(means)}, 2, 2), got {covs.shape}")
        if not (np.all(np.isfinite(means)) and np.all(np.isfinite(covs))):
            raise ContractViolationError("gaussian series contains non-finite values")
        covs = np.array([clamp_psd(c, config.psd_tolerance, f"covariance[{n}]") for n, c in enumerate(covs)])
        means.setflags(write=False)
        covs.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "covariances", covs)

    @classmethod
    def from_arrays(cls, means, covariances, h: float) -> "GaussianSeries":
        return cls(np.asarray(means, dtype=float), np.asarray(covariances, dtype=float), h)

    @classmethod
    def from_distribution(cls, distribution: DistributionTrajectory) -> "GaussianSeries":
        """取状态分布的位置-速度边缘"""
        means, covs = distribution.marginal((POSITION, VELOCITY))
        return cls(means, covs, distribution.h)

    def __len__(self) -> int:
        return len(self.means)

    def steps(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return list(zip(self.means, self.covariances, strict=True))

    def positions(self) -> PositionSeries:
        return PositionSeries(self.means[:, 0], self.h)

    def position_std(self) -> np.ndarray:
        return np.sqrt(self.covariances[:, 0, 0])

    def clip(self, length: int) -> "GaussianSeries":
        return GaussianSeries(self.means[:length], self.covariances[:length], self.h)


def clip_to_common_length(*series):
    """截断到最短序列长度，返回 (截断后的序列元组, 公共长度)"""
    if not series:
        raise InputError("no series to clip")
    length = min(len(s) for s in series)
    if length == 0:
        raise InputError("cannot clip to an empty series")
    return tuple(s.clip(length) for s in series), length
