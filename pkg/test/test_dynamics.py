"""
Unit tests for the linear system, state layouts and moment propagation.
"""

from __future__ import annotations

import numpy as np
import pytest

from src.dynamics import (
    MUSCLE,
    POSITION,
    VELOCITY,
    DistributionTrajectory,
    LinearSystem,
    StateDistribution,
    StateLayout,
    StateVector,
    propagate_joint,
    propagate_moments,
    rollout,
    step,
)
from src.exceptions import ContractViolationError

LAYOUT = StateLayout((POSITION, VELOCITY))


def _system(h: float = 0.01) -> LinearSystem:
    return LinearSystem(np.array([[1.0, h], [-0.4 * h, 1.0 - 0.2 * h]]), np.array([[0.0], [h]]), h, LAYOUT)


def test_rollout_matches_manual_recursion():
    system = _system()
    controls = np.linspace(0.0, 1.0, 25)
    trajectory = rollout(system, StateVector([0.1, -0.2], LAYOUT), controls)

    x = np.array([0.1, -0.2])
    for n, u in enumerate(controls):
        assert np.array_equal(trajectory.values[n], x)
        x = system.A @ x + system.B @ np.array([u])
    assert np.array_equal(trajectory.values[-1], x)
    assert trajectory.N == 25
    assert trajectory.times[-1] == pytest.approx(0.25)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_step_and_rollout_are_linear(seed):
    rng = np.random.default_rng(seed)
    k, m = 4, 2
    system = LinearSystem(0.9 * rng.normal(size=(k, k)) / np.sqrt(k), rng.normal(size=(k, m)), 0.01)
    x1, x2 = rng.normal(size=k), rng.normal(size=k)
    u1, u2 = rng.normal(size=(20, m)), rng.normal(size=(20, m))
    a, b = rng.normal(size=2)

    combined = step(system, a * x1 + b * x2, a * u1[0] + b * u2[0]).values
    separate = a * step(system, x1, u1[0]).values + b * step(system, x2, u2[0]).values
    assert np.allclose(combined, separate, rtol=1e-12, atol=1e-12)

    combined = rollout(system, a * x1 + b * x2, a * u1 + b * u2).values
    separate = a * rollout(system, x1, u1).values + b * rollout(system, x2, u2).values
    assert np.allclose(combined, separate, rtol=1e-10, atol=1e-12)


def test_step_is_single_rollout_step():
    system = _system()
    state = StateVector([1.0, 0.5], LAYOUT)
    nxt = step(system, state, [2.0])
    assert nxt[POSITION] == pytest.approx(1.0 + 0.01 * 0.5)
    assert np.array_equal(nxt.values, rollout(system, state, [[2.0]]).values[1])


def test_system_rejects_bad_shapes():
    with pytest.raises(ContractViolationError):
        LinearSystem(np.ones((2, 3)), np.ones((2, 1)), 0.01)
    with pytest.raises(ContractViolationError):
        LinearSystem(np.eye(2), np.ones((3, 1)), 0.01)
    with pytest.raises(ContractViolationError):
        LinearSystem(np.eye(2), np.ones((2, 1)), 0.0)
    with pytest.raises(ContractViolationError):
        LinearSystem(np.array([[np.nan, 0.0], [0.0, 1.0]]), np.ones((2, 1)), 0.01)


def test_step_rejects_wrong_control_size():
    system = _system()
    with pytest.raises(ContractViolationError):
        step(system, StateVector([0.0, 0.0], LAYOUT), [1.0, 2.0])


def test_rollout_rejects_non_finite_controls():
    with pytest.raises(ContractViolationError):
        rollout(_system(), StateVector([0.0, 0.0], LAYOUT), [1.0, np.inf])


def test_layout_lookup():
    assert MUSCLE.index(VELOCITY) == 1
    assert "target" in MUSCLE
    with pytest.raises(ContractViolationError):
        MUSCLE.index("jerk")
    with pytest.raises(ContractViolationError):
        StateLayout(("a", "a"))


def test_state_distribution_clamps_tiny_negative_eigenvalues():
    dist = StateDistribution([0.0, 0.0], np.array([[1.0, 0.0], [0.0, -1e-12]]))
    assert np.linalg.eigvalsh(dist.covariance).min() >= 0.0
    with pytest.raises(ContractViolationError):
        StateDistribution([0.0, 0.0], np.array([[1.0, 0.0], [0.0, -0.5]]))


def test_propagate_moments_without_noise_keeps_zero_covariance():
    system = _system()
    L = np.array([[0.3, 0.1]])
    dist = StateDistribution([0.2, 0.0], np.zeros((2, 2)), LAYOUT)
    nxt = propagate_moments(system, dist, L, 0.0)
    assert np.allclose(nxt.covariance, 0.0)
    assert np.allclose(nxt.mean, (system.A - system.B @ L) @ dist.mean)


def test_propagate_moments_matches_monte_carlo():
    system = _system(h=0.1)
    L = np.array([[0.8, 0.4]])
    sigma_u = 0.5
    dist = StateDistribution([0.5, -0.3], np.array([[0.04, 0.01], [0.01, 0.09]]), LAYOUT)
    predicted = propagate_moments(system, dist, L, sigma_u)

    rng = np.random.default_rng(7)
    count = 200_000
    x = dist.mean + rng.standard_normal((count, 2)) @ np.linalg.cholesky(dist.covariance).T
    u = -x @ L.T
    executed = (1.0 + sigma_u * rng.standard_normal((count, 1))) * u
    samples = x @ system.A.T + executed @ system.B.T

    assert np.allclose(samples.mean(axis=0), predicted.mean, atol=5e-3)
    assert np.allclose(np.cov(samples.T), predicted.covariance, rtol=0.03, atol=3e-4)


def test_propagate_moments_validates_inputs():
    system = _system()
    dist = StateDistribution([0.0, 0.0], np.zeros((2, 2)), LAYOUT)
    with pytest.raises(ContractViolationError):
        propagate_moments(system, dist, np.ones((1, 3)), 0.0)
    with pytest.raises(ContractViolationError):
        propagate_moments(system, dist, np.ones((1, 2)), -0.1)


def test_propagate_joint_with_perfect_estimate_reduces_to_state_feedback():
    system = _system()
    L = np.array([[0.3, 0.1]])
    mean = np.array([0.2, 0.1])
    joint_mean = np.concatenate([mean, mean])
    joint_cov = np.zeros((4, 4))
    next_mean, next_cov = propagate_joint(
        system, joint_mean, joint_cov, L, np.zeros((2, 1)), np.array([[1.0, 0.0]]), np.zeros((1, 1)), 0.0
    )
    expected = propagate_moments(system, StateDistribution(mean, np.zeros((2, 2)), LAYOUT), L, 0.0)
    assert np.allclose(next_mean[:2], expected.mean)
    assert np.allclose(next_mean[2:], expected.mean)
    assert np.allclose(next_cov, 0.0)


def test_distribution_trajectory_marginal_and_std():
    means = np.array([[0.0, 1.0], [0.5, 2.0], [1.0, 3.0]])
    covs = np.stack([np.diag([0.0, 1.0]), np.diag([0.25, 1.0]), np.diag([1.0, 4.0])])
    dist = DistributionTrajectory(means, covs, 0.01, LAYOUT)
    m, c = dist.marginal((VELOCITY,))
    assert m.shape == (3, 1)
    assert c.shape == (3, 1, 1)
    assert np.allclose(dist.component_std(POSITION), [0.0, 0.5, 1.0])
    assert dist.N == 2
    with pytest.raises(ContractViolationError):
        DistributionTrajectory(means, covs[:2], 0.01, LAYOUT)
