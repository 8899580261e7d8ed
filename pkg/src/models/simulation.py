"""对已求得的控制律做分布预测与随机采样"""

from dataclasses import dataclass

from src.dynamics import DistributionTrajectory, Trajectory
from src.exceptions import ContractViolationError
from src.models.base import ControlLaw, PointingModel
from src.models.task import TaskSpec


def predict_distribution(law: ControlLaw | None, model: PointingModel, task: TaskSpec) -> DistributionTrajectory:
    """闭环下每一步真实状态的高斯分布"""
    if law is not None and law.N != task.N:
        raise ContractViolationError(f"control law covers {law.N} steps, task has N={task.N}")
    return model.predict_distribution(task, law)


def sample_ensemble(
    law: ControlLaw | None, model: PointingModel, task: TaskSpec, count: int, seed: int
) -> list[Trajectory]:
    """count 条随机轨迹；确定性模型返回 count 条相同轨迹"""
    if count < 1:
        raise ContractViolationError(f"sample count must be positive, got {count}")
    if law is not None and law.N != task.N:
        raise ContractViolationError(f"control law covers {law.N} steps, task has N={task.N}")
    sampler = getattr(model, "sample_ensemble", None)
    if sampler is None:
        trajectory = model.simulate(task)
        return [trajectory] * count
    return sampler(task, count, seed, law)


def sample_trajectory(law: ControlLaw | None, model: PointingModel, task: TaskSpec, seed: int) -> Trajectory:
    return sample_ensemble(law, model, task, 1, seed)[0]


@dataclass(frozen=True)
class SimulationRun:
    law: ControlLaw | None
    trajectory: Trajectory
    distribution: DistributionTrajectory


def run_model(model: PointingModel, task: TaskSpec) -> SimulationRun:
    """求解一次控制律，并用同一控制律给出平均轨迹与分布"""
    solve = getattr(model, "solve", None)
    if solve is None:
        return SimulationRun(None, model.simulate(task), model.predict_distribution(task))
    law = solve(task)
    return SimulationRun(law, model.simulate(task, law), model.predict_distribution(task, law))
