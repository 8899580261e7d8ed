"""CLI 输出文件的写入（CSV / JSON）"""

import json
import math
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from src.dynamics import POSITION, VELOCITY, DistributionTrajectory, Trajectory
from src.exceptions import InputError


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_json(path: Path, data: dict) -> Path:
    """排序键、缩进 2；非有限数写为 null"""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_plain(data), sort_keys=True, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    return path


def read_json(path: Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e


def write_csv(path: Path, frame: pd.DataFrame) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def trajectory_frame(trajectory: Trajectory, acceleration: np.ndarray) -> pd.DataFrame:
    """frame, time_s, pos_m, vel_mps, acc_mps2, control；最后一帧没有控制量"""
    control = np.full(trajectory.N + 1, np.nan)
    control[: trajectory.N] = trajectory.controls[:, 0]
    return pd.DataFrame(
        {
            "frame": np.arange(trajectory.N + 1),
            "time_s": trajectory.times,
            "pos_m": trajectory.component(POSITION),
            "vel_mps": trajectory.component(VELOCITY),
            "acc_mps2": np.asarray(acceleration, dtype=float),
            "control": control,
        }
    )


def distribution_document(distribution: DistributionTrajectory, meta: dict) -> dict:
    """{meta, N, h, mean[], cov[][][]}，取 (位置, 速度) 边缘"""
    means, covs = distribution.marginal((POSITION, VELOCITY))
    return {"meta": meta, "N": distribution.N, "h": distribution.h, "mean": means, "cov": covs}
