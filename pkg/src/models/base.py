"""
模型基类与控制律

所有模型以 PointingModel 为基类；随机模型另外实现 solve / sample_ensemble。
"""

from abc import ABC, abstractmethod
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any, ClassVar

import numpy as np

from src.dynamics import POSITION, VELOCITY, DistributionTrajectory, Trajectory
from src.exceptions import ContractViolationError
from src.models.task import MuscleConfig, TaskSpec


@dataclass(frozen=True)
class ControlLaw:
    """时变反馈增益 L_n 与卡尔曼增益 K_n（LQR 无 K）"""

    gains: np.ndarray
    kalman_gains: np.ndarray | None = None
    observation_matrices: np.ndarray | None = None
    observation_noise: np.ndarray | None = None
    cost_to_go: np.ndarray | None = None
    converged: bool = True
    iterations: int = 0
    cost: float = float("nan")
    cost_history: tuple[float, ...] = field(default=())

    def __post_init__(self):
        gains = np.asarray(self.gains, dtype=float)
        if gains.ndim != 3:
            raise ContractViolationError(f"gains must be (N, m, k), got {gains.shape}")
        N = gains.shape[0]
        for name in ("kalman_gains", "observation_matrices", "observation_noise"):
            value = getattr(self, name)
            if value is not None and np.asarray(value).shape[0] != N:
                raise ContractViolationError(f"{name} has {np.asarray(value).shape[0]} entries, expected {N}")
        object.__setattr__(self, "cost_history", tuple(float(v) for v in self.cost_history))

    @property
    def N(self) -> int:
        return self.gains.shape[0]

    @property
    def L(self) -> np.ndarray:
        return self.gains

    @property
    def K(self) -> np.ndarray | None:
        return self.kalman_gains


class PointingModel(ABC):
    """指向模型基类"""

    name: ClassVar[str]
    stochastic: ClassVar[bool] = False
    parameter_names: ClassVar[tuple[str, ...]]

    @classmethod
    @abstractmethod
    def from_params(cls, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> "PointingModel":
        """从参数字典构造模型"""
        pass

    @abstractmethod
    def params_dict(self) -> dict[str, float]:
        """导出参数字典（用于 FitResult 与配置文件）"""
        pass

    @abstractmethod
    def simulate(self, task: TaskSpec) -> Trajectory:
        """确定性轨迹；随机模型返回平均轨迹"""
        pass

    @abstractmethod
    def acceleration(self, trajectory: Trajectory) -> np.ndarray:
        """每一步的指针加速度（m/s²）"""
        pass

    def predict_distribution(self, task: TaskSpec, law: ControlLaw | None = None) -> DistributionTrajectory:
        """确定性模型：轨迹本身，协方差为 0"""
        trajectory = self.simulate(task)
        k = trajectory.layout.size
        return DistributionTrajectory(
            trajectory.values,
            np.zeros((trajectory.N + 1, k, k)),
            trajectory.h,
            trajectory.layout,
            control_means=trajectory.controls,
        )

    def position_velocity(self, task: TaskSpec) -> tuple[np.ndarray, np.ndarray]:
        """(位置, 速度) 边缘分布的均值 (N+1, 2) 与协方差 (N+1, 2, 2)"""
        return self.predict_distribution(task).marginal((POSITION, VELOCITY))

    def describe(self) -> dict[str, Any]:
        return {"model": self.name, "params": self.params_dict()}

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params_dict().items())
        return f"{type(self).__name__}({args})"
