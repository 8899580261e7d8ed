"""
轨迹预处理：去除反应时间 → 剔除异常试验 → 末端保持延长并对齐

速度为前向差分 (p[n+1] − p[n]) / h，加速度为速度的前向差分。统计量均为总体矩（ddof=0）。
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from src.config import config
from src.data.corpus import Direction, RawTrial, condition_name
from src.exceptions import InputError
from src.metrics import GaussianSeries, PositionSeries
from src.models.task import TaskSpec
from src.utils import logger


def forward_velocity(positions: np.ndarray, h: float) -> np.ndarray:
    """前向差分速度，最后一帧为 0"""
    positions = np.asarray(positions, dtype=float)
    velocity = np.zeros_like(positions)
    if positions.size > 1:
        velocity[:-1] = np.diff(positions) / h
    return velocity


def movement_onset(
    positions: np.ndarray,
    h: float,
    direction: Direction,
    fraction: float | None = None,
    persistence: int | None = None,
) -> int | None:
    """首个速度达到带符号极值的 fraction 且加速度同号保持 persistence 帧的下标"""
    fraction = config.onset_velocity_fraction if fraction is None else fraction
    persistence = config.onset_persistence_frames if persistence is None else persistence
    sign = 1.0 if direction == "right" else -1.0
    velocity = sign * np.diff(np.asarray(positions, dtype=float)) / h
    if velocity.size < persistence + 1:
        return None
    extremum = float(np.max(velocity))
    if extremum <= 0:
        return None
    accelerating = np.diff(velocity) / h > 0
    # run[n]: 从 n 开始连续为正的加速度帧数
    run = np.zeros(accelerating.size + 1, dtype=int)
    for n in range(accelerating.size - 1, -1, -1):
        run[n] = run[n + 1] + 1 if accelerating[n] else 0
    candidates = np.flatnonzero((velocity[: accelerating.size] >= fraction * extremum) & (run[:-1] >= persistence))
    return int(candidates[0]) if candidates.size else None


def strip_reaction_time(trial: RawTrial, direction: Direction | None = None) -> RawTrial:
    """丢弃运动开始之前的帧，时间从 0 重新计；找不到起点时标记为 discarded"""
    direction = direction or trial.direction
    onset = movement_onset(trial.positions, trial.h, direction)
    if onset is None:
        logger.warning("Trial {} ({}) has no movement onset, discarded", trial.trial_id, trial.condition)
        return trial.with_samples(trial.times, trial.positions, discarded=True)
    if onset == 0:
        return trial.with_samples(trial.times - trial.times[0], trial.positions)
    times = trial.times[onset:] - trial.times[onset]
    return trial.with_samples(times, trial.positions[onset:])


@dataclass
class OutlierRemoval:
    trials: list[RawTrial]
    positional: list[str] = field(default_factory=list)
    duration: list[str] = field(default_factory=list)

    @property
    def removed(self) -> int:
        return len(self.positional) + len(self.duration)


def _ragged(trials: Sequence[RawTrial]) -> np.ndarray:
    length = max(len(t) for t in trials)
    matrix = np.full((len(trials), length), np.nan)
    for i, trial in enumerate(trials):
        matrix[i, : len(trial)] = trial.positions
    return matrix


def remove_outliers(trials: Sequence[RawTrial], sigma: float | None = None) -> OutlierRemoval:
    """先剔除任一帧偏离均值超过 sigma 倍标准差的试验，再剔除时长过长的试验"""
    sigma = config.outlier_sigma if sigma is None else sigma
    trials = list(trials)
    if len(trials) < 3:
        logger.warning("Outlier removal needs at least 3 trials, got {}; passing through", len(trials))
        return OutlierRemoval(trials)

    matrix = _ragged(trials)
    mean = np.nanmean(matrix, axis=0)
    std = np.nanstd(matrix, axis=0)
    with np.errstate(invalid="ignore"):
        deviant = np.abs(matrix - mean) > sigma * std
    flagged = np.any(deviant & (std > 0), axis=1)
    positional = [t.trial_id for t, bad in zip(trials, flagged, strict=True) if bad]
    kept = [t for t, bad in zip(trials, flagged, strict=True) if not bad]

    duration: list[str] = []
    if len(kept) >= 3:
        lengths = np.array([len(t) for t in kept], dtype=float)
        limit = lengths.mean() + sigma * lengths.std()
        too_long = lengths > limit
        duration = [t.trial_id for t, bad in zip(kept, too_long, strict=True) if bad]
        kept = [t for t, bad in zip(kept, too_long, strict=True) if not bad]

    if positional or duration:
        logger.info(
            "Removed {} positional and {} duration outliers out of {} trials",
            len(positional),
            len(duration),
            len(trials),
        )
    return OutlierRemoval(kept, positional, duration)


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """对齐后的试验集合及逐帧 (位置, 速度) 统计"""

    positions: np.ndarray
    velocities: np.ndarray
    h: float
    participant: str
    distance: float
    width: float
    direction: Direction
    trial_ids: tuple[str, ...] = ()

    def __post_init__(self):
        positions = np.atleast_2d(np.asarray(self.positions, dtype=float))
        velocities = np.atleast_2d(np.asarray(self.velocities, dtype=float))
        if positions.shape != velocities.shape or positions.shape[1] < 2:
            raise InputError(f"ensemble needs matching (trials, frames≥2) arrays, got {positions.shape}")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "velocities", velocities)

    @property
    def N(self) -> int:
        return self.positions.shape[1] - 1

    @property
    def count(self) -> int:
        return self.positions.shape[0]

    @property
    def means(self) -> np.ndarray:
        return np.stack([self.positions.mean(axis=0), self.velocities.mean(axis=0)], axis=1)

    @property
    def covariances(self) -> np.ndarray:
        samples = np.stack([self.positions, self.velocities], axis=2)
        centered = samples - samples.mean(axis=0)
        covs = np.einsum("tni,tnj->nij", centered, centered) / self.count
        return 0.5 * (covs + np.swapaxes(covs, 1, 2))

    @property
    def meta(self) -> dict:
        return {
            "participant": self.participant,
            "distance": self.distance,
            "width": self.width,
            "direction": self.direction,
            "trials": self.count,
        }

    @property
    def condition(self) -> str:
        return condition_name(self.participant, self.distance, self.width, self.direction)

    def to_position_series(self) -> PositionSeries:
        return PositionSeries(self.positions.mean(axis=0), self.h)

    def to_velocity_series(self) -> PositionSeries:
        return PositionSeries(self.velocities.mean(axis=0), self.h)

    def to_gaussian_series(self) -> GaussianSeries:
        return GaussianSeries(self.means, self.covariances, self.h)

    def task(self, **changes) -> TaskSpec:
        """由集合导出任务：起点取平均初始位置，目标沿方向相距 D"""
        start = float(self.positions[:, 0].mean())
        sign = 1.0 if self.direction == "right" else -1.0
        values = {
            "target": start + sign * self.distance,
            "start": start,
            "width": self.width,
            "N": self.N,
            "h": self.h,
            "initial_covariance": self.covariances[0],
        }
        values.update(changes)
        return TaskSpec(**values)

    def to_json(self) -> dict:
        return {
            "meta": self.meta,
            "N": self.N,
            "h": self.h,
            "mean": self.means.tolist(),
            "cov": self.covariances.tolist(),
        }


def extend_and_align(trials: Sequence[RawTrial]) -> TrajectoryEnsemble:
    """以末位置保持（零速度）把所有试验延长到最长长度"""
    trials = list(trials)
    if not trials:
        raise InputError("cannot align an empty set of trials")
    first = trials[0]
    for trial in trials[1:]:
        if (trial.distance, trial.width, trial.direction) != (first.distance, first.width, first.direction):
            raise InputError(f"trials {first.trial_id} and {trial.trial_id} belong to different conditions")
    length = max(len(t) for t in trials)
    if length < 2:
        raise InputError("trials must contain at least two samples")

    positions = np.empty((len(trials), length))
    for i, trial in enumerate(trials):
        positions[i, : len(trial)] = trial.positions
        positions[i, len(trial) :] = trial.positions[-1]
    velocities = np.stack([forward_velocity(p, first.h) for p in positions])
    return TrajectoryEnsemble(
        positions=positions,
        velocities=velocities,
        h=first.h,
        participant=first.participant,
        distance=first.distance,
        width=first.width,
        direction=first.direction,
        trial_ids=tuple(t.trial_id for t in trials),
    )


@dataclass
class PreprocessReport:
    ensemble: TrajectoryEnsemble
    discarded: list[str] = field(default_factory=list)
    positional: list[str] = field(default_factory=list)
    duration: list[str] = field(default_factory=list)


def preprocess(trials: Sequence[RawTrial], strip: bool = True) -> PreprocessReport:
    """完整预处理流程（单一条件）"""
    trials = list(trials)
    if not trials:
        raise InputError("no trials to preprocess")
    if strip:
        trials = [strip_reaction_time(t) for t in trials]
    discarded = [t.trial_id for t in trials if t.discarded]
    usable = [t for t in trials if not t.discarded]
    if not usable:
        raise InputError(f"all {len(trials)} trials were discarded")
    removal = remove_outliers(usable)
    ensemble = extend_and_align(removal.trials)
    logger.info(
        "Preprocessed {}: {} trials kept, N={}, {} discarded",
        ensemble.condition,
        ensemble.count,
        ensemble.N,
        len(discarded),
    )
    return PreprocessReport(ensemble, discarded, removal.positional, removal.duration)
