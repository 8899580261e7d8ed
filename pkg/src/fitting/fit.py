"""双层参数辨识：外层差分进化，内层模型求解"""

from functools import partial

from src.data.preprocessing import TrajectoryEnsemble
from src.exceptions import InputError
from src.fitting.evolution import FitConfig, FitResult, differential_evolution
from src.fitting.losses import loss_deterministic, loss_stochastic
from src.fitting.space import ParameterSpace
from src.models import ModelFactory, MuscleConfig, TaskSpec, run_model
from src.utils import logger


def fit(
    model: str,
    task: TaskSpec | None,
    ensemble: TrajectoryEnsemble | None,
    cfg: FitConfig | None = None,
    muscle: MuscleConfig | None = None,
    space: ParameterSpace | None = None,
) -> FitResult:
    """确定性模型对平均轨迹做 SSE 拟合，随机模型对分布序列做 MWD 拟合"""
    if ensemble is None or ensemble.count == 0:
        raise InputError("reference ensemble is empty")
    cfg = cfg or FitConfig()
    task = task or ensemble.task()
    if task.N != ensemble.N:
        raise InputError(f"task has N={task.N} but the reference has {ensemble.N} steps")

    model_class = ModelFactory.get_model_class(model)
    space = space or ParameterSpace.for_model(model, task.N)
    if model_class.stochastic:
        reference = ensemble.to_gaussian_series()
        loss = partial(loss_stochastic, model=model, task=task, reference=reference, muscle=muscle)
    else:
        reference = ensemble.to_position_series()
        loss = partial(loss_deterministic, model=model, task=task, reference=reference, muscle=muscle)

    logger.info("Fitting {} to {} (N={}, {} parameters)", model, ensemble.condition, task.N, space.dim)
    result = differential_evolution(space, loss, cfg)
    result.model = model
    result.condition = {**ensemble.meta, "task": task.to_dict()}
    if result.failed:
        return result

    winner = ModelFactory.create(model, result.params, muscle)
    result.params = winner.params_dict()
    run = run_model(winner, task)
    result.trajectory = run.trajectory
    result.distribution = run.distribution
    logger.info(
        "Fitted {}: loss={:.6e} after {} generations ({} evaluations, converged={})",
        model,
        result.loss,
        result.generations,
        result.evals,
        result.converged,
    )
    return result
