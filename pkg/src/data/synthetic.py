"""由模型采样生成语料，用于无真实数据时的端到端测试"""

import numpy as np

from src.data.corpus import RawTrial
from src.dynamics import POSITION
from src.exceptions import InputError
from src.models.base import PointingModel
from src.models.simulation import sample_ensemble
from src.models.task import TaskSpec
from src.utils import logger


def synthesize_corpus(
    model: PointingModel,
    task: TaskSpec,
    count: int,
    seed: int,
    jitter: float = 0.0,
    lead_frames: int = 0,
    participant: str = "synthetic",
) -> list[RawTrial]:
    """采样 count 条试验；jitter 为逐帧加性高斯噪声标准差，lead_frames 为起点前的静止帧数"""
    if count < 1:
        raise InputError(f"trial count must be positive, got {count}")
    if jitter < 0 or lead_frames < 0:
        raise InputError("jitter and lead_frames must be nonnegative")

    trajectories = sample_ensemble(None, model, task, count, seed)
    noise_rng = np.random.default_rng([seed, 1])
    direction = "right" if task.target >= task.start else "left"

    trials = []
    for i, trajectory in enumerate(trajectories):
        positions = trajectory.component(POSITION)
        if jitter > 0:
            positions = positions + jitter * noise_rng.standard_normal(positions.shape)
        if lead_frames:
            positions = np.concatenate([np.full(lead_frames, positions[0]), positions])
        times = np.arange(len(positions)) * task.h
        trials.append(
            RawTrial(
                trial_id=str(i),
                participant=participant,
                distance=task.distance,
                width=task.width,
                direction=direction,
                times=times,
                positions=positions,
            )
        )
    logger.debug("Synthesized {} trials from {} (seed={})", count, model.name, seed)
    return trials
