"""
指向任务与肌肉参数

TaskSpec 描述一次一维指向：起点、目标、目标宽度、步数与步长，以及初始状态分布。
"""

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.config import config
from src.dynamics import (
    ACCELERATION,
    EXCITATION,
    FORCE,
    INITIAL_POSITION,
    POSITION,
    TARGET,
    VELOCITY,
    StateLayout,
    StateVector,
)
from src.exceptions import ParameterError


class MuscleConfig(BaseModel):
    """二阶低通肌肉模型的时间常数与指针质量"""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    tau1: float = Field(default_factory=lambda: config.tau1, gt=0, description="激活时间常数 τ1（秒）")
    tau2: float = Field(default_factory=lambda: config.tau2, gt=0, description="力时间常数 τ2（秒）")
    mass: float = Field(default_factory=lambda: config.mass, gt=0, description="质量（kg）")


@dataclass(frozen=True)
class TaskSpec:
    """一次指向任务

    initial_covariance 可以是与模型状态同维的矩阵，也可以是 2×2 的 (位置, 速度) 块，
    后者嵌入到模型状态协方差的左上角。
    """

    target: float
    start: float = 0.0
    width: float = field(default_factory=lambda: config.default_width)
    N: int = 485
    h: float = field(default_factory=lambda: config.step_size)
    initial_position: float | None = None
    start_velocity: float = 0.0
    start_acceleration: float = 0.0
    start_force: float = 0.0
    start_excitation: float = 0.0
    initial_covariance: np.ndarray | None = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise ParameterError(f"N must be an integer >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if not (np.isfinite(self.h) and self.h > 0):
            raise ParameterError(f"h must be positive, got {self.h}")
        if not (np.isfinite(self.width) and self.width > 0):
            raise ParameterError(f"width must be positive, got {self.width}")
        scalars = (
            self.target,
            self.start,
            self.start_velocity,
            self.start_acceleration,
            self.start_force,
            self.start_excitation,
        )
        if not all(np.isfinite(v) for v in scalars):
            raise ParameterError("task values must be finite")
        if self.initial_position is None:
            object.__setattr__(self, "initial_position", float(self.start))
        if self.initial_covariance is not None:
            cov = np.asarray(self.initial_covariance, dtype=float)
            if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or not np.all(np.isfinite(cov)):
                raise ParameterError(f"initial_covariance must be a finite square matrix, got shape {cov.shape}")
            cov = cov.copy()
            cov.setflags(write=False)
            object.__setattr__(self, "initial_covariance", cov)

    @property
    def distance(self) -> float:
        return abs(self.target - self.start)

    @property
    def index_of_difficulty(self) -> float:
        """log2(D/W + 1)"""
        return float(np.log2(self.distance / self.width + 1.0))

    @property
    def duration(self) -> float:
        return self.N * self.h

    def x0_mean(self, layout: StateLayout) -> StateVector:
        values = {
            POSITION: self.start,
            VELOCITY: self.start_velocity,
            ACCELERATION: self.start_acceleration,
            FORCE: self.start_force,
            EXCITATION: self.start_excitation,
            TARGET: self.target,
            INITIAL_POSITION: self.initial_position,
        }
        try:
            return StateVector([values[name] for name in layout.names], layout)
        except KeyError as e:
            raise ParameterError(f"task cannot initialise state component {e}") from None

    def x0_cov(self, layout: StateLayout) -> np.ndarray:
        k = layout.size
        cov = np.zeros((k, k))
        if self.initial_covariance is None:
            return cov
        given = self.initial_covariance
        if given.shape == (k, k):
            return given.copy()
        if given.shape == (2, 2):
            idx = layout.indices((POSITION, VELOCITY))
            cov[np.ix_(idx, idx)] = given
            return cov
        raise ParameterError(f"initial_covariance of shape {given.shape} does not fit a {k}-state model")

    def with_updates(self, **changes) -> "TaskSpec":
        values = {name: getattr(self, name) for name in self.__dataclass_fields__}
        if "start" in changes and "initial_position" not in changes and self.initial_position == self.start:
            values["initial_position"] = None
        values.update(changes)
        return TaskSpec(**values)

    def to_dict(self) -> dict:
        """JSON 友好的任务描述"""
        data = {
            "target": self.target,
            "start": self.start,
            "width": self.width,
            "N": self.N,
            "h": self.h,
        }
        if self.initial_position != self.start:
            data["initial_position"] = self.initial_position
        for name in ("start_velocity", "start_acceleration", "start_force", "start_excitation"):
            if getattr(self, name) != 0.0:
                data[name] = getattr(self, name)
        if self.initial_covariance is not None:
            data["initial_covariance"] = self.initial_covariance.tolist()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "TaskSpec":
        names = set(cls.__dataclass_fields__)
        values = {k: v for k, v in data.items() if k in names}
        if values.get("initial_covariance") is not None:
            values["initial_covariance"] = np.asarray(values["initial_covariance"], dtype=float)
        return cls(**values)
