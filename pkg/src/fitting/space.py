from collections.abc import Mapping
from dataclasses import dataclass
from typing import Literal

import numpy as np

from src.config.static.bounds import DEFAULT_PARAMETER_BOUNDS
from src.exceptions import ParameterError


@dataclass(frozen=True)
class ParameterBound:
    name: str
    lower: float
    upper: float
    kind: Literal["continuous", "relaxed-integer"] = "continuous"

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)) or not self.lower < self.upper:
            raise ParameterError(f"invalid bounds for '{self.name}': [{self.lower}, {self.upper}]")


@dataclass(frozen=True)
class ParameterSpace:
    """参数搜索盒"""

    entries: tuple[ParameterBound, ...]

    def __post_init__(self):
        if not self.entries:
            raise ParameterError("parameter space has no entries")
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ParameterError(f"duplicate parameter names in {names}")

    @classmethod
    def for_model(cls, model: str, N: int, overrides: Mapping[str, tuple[float, float]] | None = None):
        """按模型默认边界构造；上界缺省处取任务步数 N"""
        infos = DEFAULT_PARAMETER_BOUNDS.get(model)
        if infos is None:
            raise ParameterError(f"no parameter bounds for model '{model}'")
        overrides = overrides or {}
        entries = []
        for info in infos:
            lower, upper = info.lower, float(N) if info.upper is None else info.upper
            if info.name in overrides:
                lower, upper = overrides[info.name]
            entries.append(ParameterBound(info.name, float(lower), float(upper), info.kind))
        return cls(tuple(entries))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def lower(self) -> np.ndarray:
        return np.array([e.lower for e in self.entries])

    @property
    def upper(self) -> np.ndarray:
        return np.array([e.upper for e in self.entries])

    def clip(self, vector: np.ndarray) -> np.ndarray:
        return np.clip(vector, self.lower, self.upper)

    def contains(self, vector: np.ndarray) -> bool:
        vector = np.asarray(vector, dtype=float)
        return bool(np.all(vector >= self.lower) and np.all(vector <= self.upper))

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """盒内均匀采样 (count, dim)"""
        return self.lower + rng.random((count, self.dim)) * (self.upper - self.lower)

    def to_dict(self, vector: np.ndarray) -> dict[str, float]:
        return {name: float(value) for name, value in zip(self.names, vector, strict=True)}

    def to_vector(self, values: Mapping[str, float]) -> np.ndarray:
        missing = [name for name in self.names if name not in values]
        if missing:
            raise ParameterError(f"missing parameter(s) {missing}")
        return np.array([float(values[name]) for name in self.names])
