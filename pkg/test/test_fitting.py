"""
Parameter spaces, differential evolution and model identification from synthetic corpora.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.data import extend_and_align, synthesize_corpus
from src.exceptions import InputError, ParameterError
from src.fitting import (
    FitConfig,
    FitResult,
    ParameterBound,
    ParameterSpace,
    differential_evolution,
    fit,
    loss_deterministic,
    loss_stochastic,
)
from src.models import ModelFactory, TaskSpec

CUBE = ParameterSpace(tuple(ParameterBound(f"x{i}", -5.0, 5.0) for i in range(3)))


def _sphere(params: dict[str, float]) -> float:
    return sum(v * v for v in params.values())


def _ensemble(model_name: str, params: dict, task: TaskSpec, count: int = 3, seed: int = 0):
    model = ModelFactory.create(model_name, params)
    return extend_and_align(synthesize_corpus(model, task, count=count, seed=seed))


def test_space_for_model_uses_task_length():
    space = ParameterSpace.for_model("minjerk", 300)
    assert space.names == ("n_mj",)
    assert space.upper[0] == 300.0
    assert space.entries[0].kind == "relaxed-integer"
    narrowed = ParameterSpace.for_model("2ol-eq", 100, {"k": (10.0, 20.0)})
    assert narrowed.lower[0] == 10.0
    assert narrowed.upper[1] == 500.0
    with pytest.raises(ParameterError):
        ParameterSpace.for_model("kalman", 100)


def test_space_validation():
    with pytest.raises(ParameterError):
        ParameterBound("k", 1.0, 1.0)
    with pytest.raises(ParameterError):
        ParameterSpace((ParameterBound("k", 0.0, 1.0), ParameterBound("k", 0.0, 2.0)))
    with pytest.raises(ParameterError):
        CUBE.to_vector({"x0": 1.0})
    samples = CUBE.sample(np.random.default_rng(0), 100)
    assert samples.shape == (100, 3)
    assert all(CUBE.contains(s) for s in samples)
    assert np.array_equal(CUBE.clip(np.array([-9.0, 0.5, 9.0])), [-5.0, 0.5, 5.0])


def test_de_minimises_sphere():
    result = differential_evolution(CUBE, _sphere, FitConfig(seed=1, max_generations=300))
    assert result.loss < 1e-6
    assert not result.failed
    assert all(b <= a for a, b in zip(result.history, result.history[1:]))
    assert result.evals == 15 * (result.generations + 1)


def test_de_stops_once_progress_stalls():
    cfg = FitConfig(seed=1, max_generations=2000, tolerance=1e-8, patience=30)
    result = differential_evolution(CUBE, lambda params: 1.0 + _sphere(params), cfg)
    assert result.converged is True
    assert result.generations < cfg.max_generations
    assert len(result.history) == result.generations + 1
    assert result.loss == pytest.approx(1.0, abs=1e-4)
    stalled = result.history[-cfg.patience - 1]
    assert stalled - result.loss <= cfg.tolerance * stalled


def test_de_is_deterministic_for_seed_and_workers():
    cfg = FitConfig(seed=4, max_generations=20)
    serial = differential_evolution(CUBE, _sphere, cfg)
    again = differential_evolution(CUBE, _sphere, cfg)
    threaded = differential_evolution(CUBE, _sphere, cfg.model_copy(update={"workers": 4}))
    assert serial.params == again.params == threaded.params
    assert serial.history == threaded.history
    other = differential_evolution(CUBE, _sphere, cfg.model_copy(update={"seed": 5}))
    assert other.params != serial.params


def test_zero_generations_only_scores_initial_population():
    result = differential_evolution(CUBE, _sphere, FitConfig(max_generations=0, population_size=8))
    assert result.generations == 0
    assert result.evals == 8
    assert not result.converged
    assert len(result.history) == 1


def test_initial_parameters_join_the_population():
    cfg = FitConfig(max_generations=0, initial={"x0": 0.0, "x1": 0.0, "x2": 0.0})
    result = differential_evolution(CUBE, _sphere, cfg)
    assert result.history[0] == 0.0
    assert result.params == {"x0": 0.0, "x1": 0.0, "x2": 0.0}


def test_all_infinite_losses_mark_failure():
    result = differential_evolution(CUBE, lambda params: math.inf, FitConfig(max_generations=3))
    assert result.failed
    data = result.to_dict()
    assert data["loss"] is None
    assert data["failed"] is True
    restored = FitResult.from_dict(data)
    assert restored.failed
    assert math.isinf(restored.loss)


def test_losses_return_infinity_for_invalid_parameters(short_task):
    ensemble = _ensemble("2ol-eq", {"k": 40.0, "zeta": 1.0}, short_task)
    task = ensemble.task()
    assert math.isinf(loss_deterministic({"k": -1.0, "d": 1.0}, "2ol-eq", task, ensemble.to_position_series()))
    assert loss_deterministic({"k": 40.0, "zeta": 1.0}, "2ol-eq", task, ensemble.to_position_series()) < 1e-20
    reference = ensemble.to_gaussian_series()
    assert math.isinf(loss_stochastic({"omega_r": 1e-3}, "lqg", task, reference))


def test_fit_rejects_mismatched_or_missing_reference(short_task):
    ensemble = _ensemble("minjerk", {"n_mj": 100}, short_task)
    with pytest.raises(InputError):
        fit("minjerk", short_task.with_updates(N=short_task.N + 5), ensemble)
    with pytest.raises(InputError):
        fit("minjerk", short_task, None)


def test_fit_records_condition_and_winner(short_task):
    ensemble = _ensemble("minjerk", {"n_mj": 100}, short_task)
    result = fit("minjerk", None, ensemble, FitConfig(max_generations=0))
    assert result.model == "minjerk"
    assert result.condition["direction"] == "right"
    assert TaskSpec.from_dict(result.condition["task"]).N == short_task.N
    assert result.trajectory is not None
    assert result.distribution.N == short_task.N


@pytest.mark.slow
def test_2ol_parameters_are_recovered():
    task = TaskSpec(target=0.2, start=0.0, N=300, h=0.002)
    truth = {"k": 40.0, "zeta": 1.0}
    result = fit("2ol-eq", None, _ensemble("2ol-eq", truth, task), FitConfig(seed=0, max_generations=200))
    assert result.params["k"] == pytest.approx(40.0, rel=0.05)
    assert result.params["zeta"] == pytest.approx(1.0, rel=0.05)


@pytest.mark.slow
def test_minjerk_surge_length_is_recovered():
    task = TaskSpec(target=0.2, start=0.0, N=300, h=0.002)
    result = fit("minjerk", None, _ensemble("minjerk", {"n_mj": 200}, task), FitConfig(seed=0, max_generations=100))
    assert abs(result.params["n_mj"] - 200) <= 2


@pytest.mark.slow
def test_lqg_fit_never_loses_to_its_starting_point(lqg_params):
    task = TaskSpec(target=0.2, start=0.0, N=100, h=0.002)
    ensemble = _ensemble("lqg", lqg_params, task, count=50, seed=3)
    start = loss_stochastic(lqg_params, "lqg", ensemble.task(), ensemble.to_gaussian_series())
    assert math.isfinite(start)

    result = fit("lqg", None, ensemble, FitConfig(seed=0, max_generations=3, initial=lqg_params))
    assert result.loss <= start
    assert result.distribution is not None
