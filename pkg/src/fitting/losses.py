"""参数辨识的损失函数；内层求解失败一律返回 +inf"""

import math
from collections.abc import Mapping

import numpy as np

from src.dynamics import POSITION
from src.exceptions import PointingModelError
from src.metrics import GaussianSeries, PositionSeries, mwd, sse
from src.models import ModelFactory, MuscleConfig, TaskSpec
from src.utils import logger

SOLVER_FAILURES = (PointingModelError, ValueError, FloatingPointError, np.linalg.LinAlgError)


def loss_deterministic(
    params: Mapping[str, float],
    model: str,
    task: TaskSpec,
    reference: PositionSeries,
    muscle: MuscleConfig | None = None,
) -> float:
    """模型位置序列与参考平均轨迹的 SSE"""
    try:
        trajectory = ModelFactory.create(model, params, muscle).simulate(task)
        value = sse(PositionSeries(trajectory.component(POSITION), task.h), reference)
    except SOLVER_FAILURES as e:
        logger.debug("{} loss sentinel at {}: {}", model, dict(params), e)
        return math.inf
    return value if math.isfinite(value) else math.inf


def loss_stochastic(
    params: Mapping[str, float],
    model: str,
    task: TaskSpec,
    reference: GaussianSeries,
    muscle: MuscleConfig | None = None,
) -> float:
    """预测 (位置, 速度) 分布与参考分布序列的 MWD"""
    try:
        distribution = ModelFactory.create(model, params, muscle).predict_distribution(task)
        value = mwd(GaussianSeries.from_distribution(distribution), reference)
    except SOLVER_FAILURES as e:
        logger.debug("{} loss sentinel at {}: {}", model, dict(params), e)
        return math.inf
    return value if math.isfinite(value) else math.inf
