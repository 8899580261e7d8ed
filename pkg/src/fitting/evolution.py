"""
差分进化（DE/rand/1/bin）

每代先生成全部试验向量，再统一评估（可并行），按下标顺序做贪心选择，
因此串行与并行评估得到完全相同的下一代。
"""

import math
import time
from collections.abc import Callable, Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from pydantic import BaseModel, Field

from src.config import config
from src.dynamics import DistributionTrajectory, Trajectory
from src.fitting.space import ParameterSpace
from src.utils import logger

Loss = Callable[[dict[str, float]], float]


class FitConfig(BaseModel):
    """差分进化超参数"""

    population_size: int | None = Field(default=None, ge=4, description="种群规模；None 时取 max(15, 5·维数)")
    max_generations: int = Field(default_factory=lambda: config.de_max_generations, ge=0, description="最大代数")
    tolerance: float = Field(default_factory=lambda: config.de_tolerance, ge=0, description="最优损失相对改进阈值")
    patience: int = Field(default_factory=lambda: config.de_patience, ge=1, description="收敛判断窗口（代）")
    mutation: float = Field(default_factory=lambda: config.de_mutation, gt=0, le=2, description="差分权重 F")
    crossover: float = Field(default_factory=lambda: config.de_crossover, ge=0, le=1, description="交叉率 CR")
    seed: int = Field(default=0, description="随机种子")
    workers: int = Field(default=1, ge=1, description="同代损失评估的并行线程数")
    initial: dict[str, float] | None = Field(default=None, description="初始参数 Λ⁰，作为种群第 0 个成员")

    def population_for(self, dim: int) -> int:
        if self.population_size is not None:
            return self.population_size
        return max(config.de_min_population, config.de_population_factor * dim)


def _finite_or_none(value: float) -> float | None:
    return float(value) if math.isfinite(value) else None


@dataclass
class FitResult:
    """参数辨识结果"""

    model: str
    params: dict[str, float]
    loss: float
    history: list[float]
    evals: int
    seed: int
    converged: bool
    generations: int
    failed: bool = False
    wall_time: float = 0.0
    trajectory: Trajectory | None = None
    distribution: DistributionTrajectory | None = None
    condition: dict[str, Any] | None = field(default=None)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "model": self.model,
            "params": {k: _finite_or_none(v) for k, v in self.params.items()},
            "loss": _finite_or_none(self.loss),
            "history": [_finite_or_none(v) for v in self.history],
            "evals": self.evals,
            "seed": self.seed,
            "converged": self.converged,
            "generations": self.generations,
        }
        if self.failed:
            data["failed"] = True
        if self.condition is not None:
            data["condition"] = self.condition
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FitResult":
        def _number(value) -> float:
            return float("inf") if value is None else float(value)

        return cls(
            model=data["model"],
            params={k: _number(v) for k, v in data["params"].items()},
            loss=_number(data.get("loss")),
            history=[_number(v) for v in data.get("history", [])],
            evals=int(data.get("evals", 0)),
            seed=int(data.get("seed", 0)),
            converged=bool(data.get("converged", False)),
            generations=int(data.get("generations", 0)),
            failed=bool(data.get("failed", False)),
            condition=data.get("condition"),
        )


def _evaluate(loss: Loss, space: ParameterSpace, candidates: np.ndarray, workers: int) -> np.ndarray:
    params = [space.to_dict(c) for c in candidates]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            values = list(executor.map(loss, params))
    else:
        values = [loss(p) for p in params]
    values = np.array(values, dtype=float)
    values[~np.isfinite(values)] = np.inf
    return values


def _trial_vectors(population: np.ndarray, space: ParameterSpace, cfg: FitConfig, rng: np.random.Generator):
    size, dim = population.shape
    trials = np.empty_like(population)
    for i in range(size):
        others = np.delete(np.arange(size), i)
        a, b, c = rng.choice(others, 3, replace=False)
        mutant = population[a] + cfg.mutation * (population[b] - population[c])
        cross = rng.random(dim) < cfg.crossover
        cross[rng.integers(dim)] = True
        trials[i] = space.clip(np.where(cross, mutant, population[i]))
    return trials


def differential_evolution(space: ParameterSpace, loss: Loss, cfg: FitConfig | None = None) -> FitResult:
    """在参数盒内最小化 loss；结果只由 seed 决定"""
    cfg = cfg or FitConfig()
    started = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    size = cfg.population_for(space.dim)

    population = space.sample(rng, size)
    if cfg.initial is not None:
        population[0] = space.clip(space.to_vector(cfg.initial))
    fitness = _evaluate(loss, space, population, cfg.workers)
    evals = size
    history = [float(fitness.min())]
    converged = False
    generations = 0

    for generation in range(1, cfg.max_generations + 1):
        trials = _trial_vectors(population, space, cfg, rng)
        trial_fitness = _evaluate(loss, space, trials, cfg.workers)
        evals += size
        accept = trial_fitness <= fitness
        population[accept] = trials[accept]
        fitness[accept] = trial_fitness[accept]
        best = float(fitness.min())
        history.append(best)
        generations = generation
        logger.debug("DE generation {}: best loss {:.6e}", generation, best)

        if len(history) > cfg.patience:
            previous = history[-cfg.patience - 1]
            if math.isfinite(previous) and previous - best <= cfg.tolerance * abs(previous):
                converged = True
                break

    index = int(np.argmin(fitness))
    loss_value = float(fitness[index])
    failed = not math.isfinite(loss_value)
    if failed:
        logger.warning("Every candidate produced an infinite loss after {} evaluations", evals)
    return FitResult(
        model="",
        params=space.to_dict(population[index]),
        loss=loss_value,
        history=history,
        evals=evals,
        seed=cfg.seed,
        converged=converged,
        generations=generations,
        failed=failed,
        wall_time=time.perf_counter() - started,
    )
