"""
肌肉驱动的指针动力学与二次代价

状态 (p, v, f, g, T)，扩展版在 T 之前插入初始位置 T0：
    p' = p + h v
    v' = v + h f / m
    f' = (1 − h/τ2) f + (h/τ2) g
    g' = (1 − h/τ1) g + (h/τ1) u
目标分量保持不变。
"""

from typing import Literal

import numpy as np

from src.dynamics import (
    EXCITATION,
    EXTENDED_MUSCLE,
    FORCE,
    MUSCLE,
    POSITION,
    TARGET,
    VELOCITY,
    LinearSystem,
    StateLayout,
)
from src.models.params import LQCostWeights
from src.models.task import MuscleConfig

CostSchedule = Literal["continuous", "terminal"]


def build_muscle_system(h: float, muscle: MuscleConfig | None = None, extended: bool = False) -> LinearSystem:
    muscle = muscle or MuscleConfig()
    layout = EXTENDED_MUSCLE if extended else MUSCLE
    p, v, f, g = layout.indices((POSITION, VELOCITY, FORCE, EXCITATION))

    A = np.eye(layout.size)
    A[p, v] = h
    A[v, f] = h / muscle.mass
    A[f, f] = 1.0 - h / muscle.tau2
    A[f, g] = h / muscle.tau2
    A[g, g] = 1.0 - h / muscle.tau1
    B = np.zeros((layout.size, 1))
    B[g, 0] = h / muscle.tau1
    return LinearSystem(A, B, h, layout)


def state_cost_matrix(layout: StateLayout, weights: LQCostWeights) -> np.ndarray:
    """xᵀ Q x = (p − T)² + ω_v v² + ω_f f²"""
    p, v, f, T = layout.indices((POSITION, VELOCITY, FORCE, TARGET))
    Q = np.zeros((layout.size, layout.size))
    Q[p, p] = Q[T, T] = 1.0
    Q[p, T] = Q[T, p] = -1.0
    Q[v, v] = weights.omega_v
    Q[f, f] = weights.omega_f
    return Q


def state_cost_schedule(
    layout: StateLayout, weights: LQCostWeights, N: int, schedule: CostSchedule = "continuous"
) -> np.ndarray:
    """Q_0, ..., Q_N；terminal 只在最后一步计入状态代价"""
    Q = state_cost_matrix(layout, weights)
    costs = np.zeros((N + 1, layout.size, layout.size))
    if schedule == "continuous":
        costs[:] = Q
    elif schedule == "terminal":
        costs[N] = Q
    else:
        raise ValueError(f"unknown cost schedule: {schedule}")
    return costs


def control_cost(weights: LQCostWeights, N: int) -> np.ndarray:
    """R = ω_r / (N − 1)"""
    return np.array([[weights.omega_r / (N - 1)]])
