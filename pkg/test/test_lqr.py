"""
Riccati recursion and LQR: dynamic-programming oracle, optimality and target reaching.
"""

from __future__ import annotations

import numpy as np
import pytest

from src.dynamics import FORCE, POSITION, LinearSystem
from src.exceptions import ContractViolationError, SolverDivergenceError
from src.models import (
    LQCostWeights,
    LQRModel,
    build_muscle_system,
    closed_loop_rollout,
    control_cost,
    lqr_cost,
    solve_lqr,
    solve_riccati,
    state_cost_schedule,
)

WEIGHTS = LQCostWeights(omega_r=1e-3, omega_v=0.0, omega_f=0.0)


def _grid_dp(a: float, b: float, q: float, r: float, steps: int) -> list[float]:
    """标量问题的穷举动态规划：代价函数为二次型 S x²，在 x = 1 处网格搜索最优 u"""
    grid = np.arange(-2.0, 2.0, 1e-4)
    S = q
    gains = []
    for _ in range(steps):
        cost = r * grid**2 + S * (a + b * grid) ** 2
        u = grid[int(np.argmin(cost))]
        gains.append(-u)
        S = q + r * u**2 + S * (a + b * u) ** 2
    return gains[::-1]


def test_scalar_gains_match_dynamic_programming():
    a, b, q, r = 1.0, 1.0, 1.0, 1.0
    system = LinearSystem(np.array([[a]]), np.array([[b]]), 1.0)
    gains, cost_to_go = solve_riccati(system, np.full((4, 1, 1), q), r)

    assert gains[:, 0, 0] == pytest.approx(_grid_dp(a, b, q, r, 3), abs=1e-3)
    # 闭式解：L = S/(1+S)
    assert gains[2, 0, 0] == pytest.approx(0.5)
    assert gains[1, 0, 0] == pytest.approx(0.6)
    assert gains[0, 0, 0] == pytest.approx(1.6 / 2.6)
    assert cost_to_go[0, 0, 0] == pytest.approx(1.0 + 1.6 * (1 - 1.6 / 2.6))


def test_riccati_validates_shapes():
    system = LinearSystem(np.eye(2), np.ones((2, 1)), 0.01)
    with pytest.raises(ContractViolationError):
        solve_riccati(system, np.zeros((5, 3, 3)), 1.0)
    with pytest.raises(ContractViolationError):
        solve_riccati(system, np.zeros((5, 2, 2)), np.eye(2))


def test_riccati_reports_indefinite_denominator():
    system = LinearSystem(np.eye(1), np.ones((1, 1)), 0.01)
    with pytest.raises(SolverDivergenceError):
        solve_riccati(system, np.full((3, 1, 1), -1.0), -2.0)


def test_lqr_cost_matches_cost_to_go(task):
    law = solve_lqr(WEIGHTS, task)
    system = build_muscle_system(task.h)
    Q = state_cost_schedule(system.layout, WEIGHTS, task.N)
    R = control_cost(WEIGHTS, task.N)
    x0 = task.x0_mean(system.layout).values
    assert lqr_cost(system, law.gains, x0, Q, R) == pytest.approx(law.cost, rel=1e-8)


@pytest.mark.parametrize("delta", [0.01, -0.01])
def test_lqr_gains_are_optimal_against_single_entry_perturbations(task, delta):
    law = solve_lqr(WEIGHTS, task)
    system = build_muscle_system(task.h)
    Q = state_cost_schedule(system.layout, WEIGHTS, task.N)
    R = control_cost(WEIGHTS, task.N)
    x0 = task.x0_mean(system.layout).values
    best = lqr_cost(system, law.gains, x0, Q, R)

    # 在 |L_n[j] x_n[j]| 最大的 200 个条目中随机抽取
    states = closed_loop_rollout(system, law.gains, x0).values[:-1]
    contribution = np.abs(law.gains[:, 0, :] * states)
    candidates = np.argsort(contribution, axis=None)[::-1][:200]
    rng = np.random.default_rng(7)
    for flat in rng.choice(candidates, size=12, replace=False):
        n, j = np.unravel_index(flat, contribution.shape)
        gains = law.gains.copy()
        gains[n, 0, j] *= 1.0 + delta
        assert lqr_cost(system, gains, x0, Q, R) > best, (n, j)

def test_lqr_reaches_target(task):
    model = LQRModel(WEIGHTS)
    trajectory = model.simulate(task)
    positions = trajectory.component(POSITION)
    assert positions[0] == 0.0
    assert abs(positions[-1] - task.target) <= task.width / 2
    assert np.allclose(model.acceleration(trajectory), trajectory.component(FORCE))


def test_lqr_terminal_schedule_only_costs_final_state(task):
    system = build_muscle_system(task.h)
    Q = state_cost_schedule(system.layout, WEIGHTS, task.N, "terminal")
    assert np.all(Q[:-1] == 0.0)
    assert Q[-1, 0, 0] == 1.0
    with pytest.raises(ValueError):
        state_cost_schedule(system.layout, WEIGHTS, task.N, "sometimes")


def test_lqr_distribution_without_initial_spread_is_degenerate(short_task):
    model = LQRModel(WEIGHTS)
    dist = model.predict_distribution(short_task)
    assert np.allclose(dist.covariances, 0.0)
    assert np.allclose(dist.means, model.simulate(short_task).values)


def test_cost_to_go_matrices_are_psd(task):
    system = build_muscle_system(task.h)
    Q = state_cost_schedule(system.layout, WEIGHTS, task.N)
    _, cost_to_go = solve_riccati(system, Q, control_cost(WEIGHTS, task.N))
    for S in cost_to_go[::50]:
        assert np.allclose(S, S.T)
        assert np.linalg.eigvalsh(S).min() >= -1e-9


def test_gains_ignore_common_cost_scaling(short_task):
    system = build_muscle_system(short_task.h)
    Q = state_cost_schedule(system.layout, WEIGHTS, short_task.N)
    R = control_cost(WEIGHTS, short_task.N)
    gains, _ = solve_riccati(system, Q, R)
    scaled, _ = solve_riccati(system, 7.5 * Q, 7.5 * R)
    assert np.allclose(gains, scaled, rtol=1e-8, atol=1e-10)


def test_heavy_effort_cost_barely_moves(short_task):
    lazy = LQRModel(LQCostWeights(omega_r=1e6, omega_v=0.0, omega_f=0.0)).simulate(short_task)
    assert abs(lazy.component(POSITION)[-1] - short_task.start) < 0.01 * short_task.distance
