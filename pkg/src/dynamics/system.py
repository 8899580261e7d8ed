"""
离散时间线性系统

x_{n+1} = A x_n + B u_n，前向 Euler 离散，步长 h。
所有值类型构造后只读，可在线程间共享。
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from src.dynamics.layout import StateLayout
from src.exceptions import ContractViolationError
from src.utils import as_matrix, as_vector


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class LinearSystem:
    """人机系统动力学 (A, B, h)"""

    A: np.ndarray
    B: np.ndarray
    h: float
    layout: StateLayout | None = None

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = np.asarray(self.B, dtype=float)
        if B.ndim == 1:
            B = B.reshape(-1, 1)
        B = as_matrix(B, "B")
        if A.shape[0] != A.shape[1]:
            raise ContractViolationError(f"A must be square, got {A.shape}")
        if B.shape[0] != A.shape[0]:
            raise ContractViolationError(f"B must have {A.shape[0]} rows, got {B.shape}")
        if not (np.isfinite(self.h) and self.h > 0):
            raise ContractViolationError(f"step size h must be positive, got {self.h}")
        layout = self.layout or StateLayout.generic(A.shape[0])
        if layout.size != A.shape[0]:
            raise ContractViolationError(f"layout has {layout.size} components, system has {A.shape[0]}")
        object.__setattr__(self, "A", _freeze(A))
        object.__setattr__(self, "B", _freeze(B))
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "layout", layout)

    @property
    def k(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]


@dataclass(frozen=True)
class StateVector:
    values: np.ndarray
    layout: StateLayout

    def __post_init__(self):
        values = as_vector(self.values, "state")
        if values.size != self.layout.size:
            raise ContractViolationError(f"state has {values.size} entries, layout {self.layout.names}")
        object.__setattr__(self, "values", _freeze(values))

    def __getitem__(self, name: str) -> float:
        return float(self.values[self.layout.index(name)])

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class Trajectory:
    """状态序列（N+1 行）与控制序列（N 行）

    随机模型的单次采样额外记录估计器状态 estimates。
    """

    values: np.ndarray
    controls: np.ndarray
    h: float
    layout: StateLayout
    estimates: np.ndarray | None = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        controls = np.asarray(self.controls, dtype=float)
        if controls.ndim == 1:
            controls = controls.reshape(-1, 1)
        if values.ndim != 2 or values.shape[1] != self.layout.size:
            raise ContractViolationError(f"states must be (N+1, {self.layout.size}), got {values.shape}")
        if controls.ndim != 2 or controls.shape[0] + 1 != values.shape[0]:
            raise ContractViolationError(
                f"trajectory has {values.shape[0]} states but {controls.shape[0]} controls"
            )
        object.__setattr__(self, "values", _freeze(values))
        object.__setattr__(self, "controls", _freeze(controls))
        if self.estimates is not None:
            estimates = np.asarray(self.estimates, dtype=float)
            if estimates.shape != values.shape:
                raise ContractViolationError(f"estimates shape {estimates.shape} != states shape {values.shape}")
            object.__setattr__(self, "estimates", _freeze(estimates))

    @property
    def N(self) -> int:
        return self.controls.shape[0]

    @property
    def states(self) -> list[StateVector]:
        return [StateVector(row, self.layout) for row in self.values]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.h

    def component(self, name: str) -> np.ndarray:
        return self.values[:, self.layout.index(name)]


def _as_state(system: LinearSystem, state) -> np.ndarray:
    values = state.values if isinstance(state, StateVector) else as_vector(state, "state")
    if values.size != system.k:
        raise ContractViolationError(f"state has {values.size} entries, system expects {system.k}")
    return values


def _as_control(system: LinearSystem, control) -> np.ndarray:
    u = as_vector(control, "control")
    if u.size != system.m:
        raise ContractViolationError(f"control has {u.size} entries, system expects {system.m}")
    return u


def step(system: LinearSystem, state: StateVector, control) -> StateVector:
    """单步推进：A·x + B·u"""
    x = _as_state(system, state)
    u = _as_control(system, control)
    return StateVector(system.A @ x + system.B @ u, system.layout)


def rollout(system: LinearSystem, x0: StateVector, controls: Sequence | np.ndarray) -> Trajectory:
    """按给定控制序列前向仿真"""
    x = _as_state(system, x0)
    u_seq = np.asarray(controls, dtype=float)
    if u_seq.ndim == 1:
        u_seq = u_seq.reshape(-1, system.m) if system.m == 1 else u_seq.reshape(1, -1)
    if u_seq.ndim != 2 or u_seq.shape[0] == 0:
        raise ContractViolationError("controls must be a nonempty sequence")
    if u_seq.shape[1] != system.m:
        raise ContractViolationError(f"controls have {u_seq.shape[1]} channels, system expects {system.m}")
    if not np.all(np.isfinite(u_seq)):
        raise ContractViolationError("controls contain non-finite entries")

    states = np.empty((u_seq.shape[0] + 1, system.k))
    states[0] = x
    for n, u in enumerate(u_seq):
        states[n + 1] = system.A @ states[n] + system.B @ u
    return Trajectory(states, u_seq, system.h, system.layout)
