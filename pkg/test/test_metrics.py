"""
Deterministic errors, Gaussian distances and trajectory summaries.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.exceptions import ContractViolationError, InputError
from src.metrics import (
    GaussianSeries,
    PositionSeries,
    clip_to_common_length,
    gaussian_kl,
    half_distance_time,
    has_overshoot,
    max_error,
    mkl,
    mwd,
    peak_velocity,
    sse,
    terminal_std,
    time_to_target,
    wasserstein2,
)


def test_sse_and_max_error():
    sim = PositionSeries([0.0, 1.0, 2.0], 0.01)
    ref = PositionSeries([0.0, 0.5, 3.0], 0.01)
    assert sse(sim, ref) == pytest.approx(0.25 + 1.0)
    assert max_error(sim, ref) == pytest.approx(1.0)
    assert sse(sim, sim) == 0.0


def test_deterministic_metrics_require_equal_lengths():
    with pytest.raises(InputError):
        sse(PositionSeries([0.0, 1.0], 0.01), PositionSeries([0.0], 0.01))
    with pytest.raises(InputError):
        max_error(PositionSeries([], 0.01), PositionSeries([], 0.01))


def test_wasserstein_with_equal_covariances_is_mean_distance():
    rng = np.random.default_rng(0)
    root = rng.normal(size=(2, 2))
    cov = root @ root.T + 0.1 * np.eye(2)
    a, b = rng.normal(size=2), rng.normal(size=2)
    assert wasserstein2((a, cov), (b, cov)) == pytest.approx(np.linalg.norm(a - b), abs=1e-9)
    assert wasserstein2((a, cov), (a, cov)) == pytest.approx(0.0, abs=1e-6)


def test_scalar_wasserstein_closed_form():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        mu1, mu2 = rng.uniform(-1, 1, size=2)
        s1, s2 = rng.uniform(0.1, 2.0, size=2)
        expected = math.sqrt((mu1 - mu2) ** 2 + (s1 - s2) ** 2)
        assert wasserstein2(([mu1], [[s1**2]]), ([mu2], [[s2**2]])) == pytest.approx(expected, abs=1e-10)


def test_wasserstein_is_symmetric():
    a = ([0.1, 0.2], np.array([[0.5, 0.1], [0.1, 0.3]]))
    b = ([0.0, -0.1], np.array([[0.2, 0.0], [0.0, 0.9]]))
    assert wasserstein2(a, b) == pytest.approx(wasserstein2(b, a), rel=1e-9)


def test_scalar_kl_closed_form():
    mu1, s1, mu2, s2 = 0.3, 0.5, -0.2, 1.5
    expected = math.log(s2 / s1) + (s1**2 + (mu1 - mu2) ** 2) / (2 * s2**2) - 0.5
    assert gaussian_kl(([mu1], [[s1**2]]), ([mu2], [[s2**2]])) == pytest.approx(expected, rel=1e-10)
    assert gaussian_kl(([mu1], [[s1**2]]), ([mu1], [[s1**2]])) == pytest.approx(0.0, abs=1e-12)


def test_kl_is_asymmetric():
    a = ([0.0], [[0.25]])
    b = ([0.0], [[4.0]])
    assert gaussian_kl(a, b) != pytest.approx(gaussian_kl(b, a))


def test_kl_of_degenerate_gaussians_is_finite():
    zero = np.zeros((2, 2))
    assert gaussian_kl(([0.0, 0.0], zero), ([0.0, 0.0], zero)) == pytest.approx(0.0, abs=1e-9)
    assert np.isfinite(gaussian_kl(([0.0, 0.0], zero), ([1e-6, 0.0], np.diag([1e-4, 0.0]))))


def test_gaussian_metrics_reject_dimension_mismatch():
    with pytest.raises(InputError):
        wasserstein2(([0.0], [[1.0]]), ([0.0, 0.0], np.eye(2)))
    with pytest.raises(InputError):
        gaussian_kl(([0.0, 0.0], np.eye(3)), ([0.0, 0.0], np.eye(2)))


def _series(means, stds, h=0.01) -> GaussianSeries:
    means = np.asarray(means, dtype=float)
    covs = np.stack([np.diag([s**2, s**2]) for s in stds])
    return GaussianSeries(np.column_stack([means, np.zeros_like(means)]), covs, h)


def test_mwd_and_mkl_average_over_steps():
    sim = _series([0.0, 1.0, 2.0], [1.0, 1.0, 1.0])
    ref = _series([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])
    assert mwd(sim, ref) == pytest.approx(1.0)
    assert mkl(sim, ref) == pytest.approx((0.0 + 0.5 + 2.0) / 3)
    assert mwd(ref, ref) == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(InputError):
        mwd(sim, sim.clip(2))


def test_clip_to_common_length():
    a = PositionSeries(np.arange(10.0), 0.01)
    b = _series(np.arange(7.0), np.ones(7))
    (ca, cb), length = clip_to_common_length(a, b)
    assert length == 7
    assert len(ca) == len(cb) == 7
    assert np.array_equal(ca.values, np.arange(7.0))
    with pytest.raises(InputError):
        clip_to_common_length()


def test_series_reject_non_finite_values():
    with pytest.raises(ContractViolationError):
        PositionSeries([0.0, np.nan], 0.01)
    with pytest.raises(ContractViolationError):
        GaussianSeries(np.zeros((3, 2)), np.zeros((2, 2, 2)), 0.01)


def test_time_to_target_and_half_distance():
    positions = np.array([0.0, 0.05, 0.12, 0.195, 0.2, 0.2])
    assert time_to_target(positions, 0.2, 0.02, 0.01) == pytest.approx(0.03)
    assert math.isnan(time_to_target(positions, 0.5, 0.02, 0.01))
    assert half_distance_time(positions, 0.0, 0.2, 0.01) == pytest.approx(0.02)
    assert half_distance_time(-positions, 0.0, -0.2, 0.01) == pytest.approx(0.02)


def test_peak_velocity_and_terminal_std():
    assert peak_velocity([0.1, -0.7, 0.3]) == pytest.approx(0.7)
    assert terminal_std([0.0, 0.1, 0.02]) == pytest.approx(0.02)
    with pytest.raises(InputError):
        peak_velocity([])


def test_overshoot_respects_direction():
    assert has_overshoot([0.0, 0.15, 0.21, 0.2], 0.0, 0.2)
    assert not has_overshoot([0.0, 0.15, 0.2, 0.2], 0.0, 0.2)
    assert has_overshoot([0.0, -0.15, -0.21], 0.0, -0.2)
    assert not has_overshoot([0.0, -0.1, -0.2], 0.0, -0.2)
