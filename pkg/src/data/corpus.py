"""
指向轨迹语料的读写

每个 CSV 文件对应一个 (被试, 任务, 方向) 条件，列为 trial_id, frame, time_s, pos_m；
元数据来自文件名 p<participant>_d<distance>_w<width>_<left|right>.csv，也可显式覆盖。
"""

import re
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd

from src.config import config
from src.exceptions import CorpusFormatError
from src.utils import logger

Direction = Literal["left", "right"]

CORPUS_COLUMNS = ("trial_id", "frame", "time_s", "pos_m")
UNIFORM_TOLERANCE = 1e-9
FILENAME_PATTERN = re.compile(
    r"^p(?P<participant>[^_]+)_d(?P<distance>[0-9.eE+-]+)_w(?P<width>[0-9.eE+-]+)_(?P<direction>left|right)\.csv$"
)


@dataclass(frozen=True)
class RawTrial:
    """单次试验的原始位置序列"""

    trial_id: str
    participant: str
    distance: float
    width: float
    direction: Direction
    times: np.ndarray
    positions: np.ndarray
    discarded: bool = field(default=False)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        positions = np.asarray(self.positions, dtype=float)
        if times.shape != positions.shape or times.ndim != 1:
            raise CorpusFormatError(f"trial {self.trial_id}: times and positions must be 1-D of equal length")
        if self.direction not in ("left", "right"):
            raise CorpusFormatError(f"trial {self.trial_id}: direction must be 'left' or 'right'")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", positions)

    @property
    def h(self) -> float:
        if len(self.times) < 2:
            return config.step_size
        return float(self.times[1] - self.times[0])

    @property
    def sign(self) -> float:
        return 1.0 if self.direction == "right" else -1.0

    @property
    def condition(self) -> str:
        return condition_name(self.participant, self.distance, self.width, self.direction)

    def __len__(self) -> int:
        return len(self.positions)

    def with_samples(self, times: np.ndarray, positions: np.ndarray, **changes) -> "RawTrial":
        return replace(self, times=times, positions=positions, **changes)


def condition_name(participant: str, distance: float, width: float, direction: str) -> str:
    return f"p{participant}_d{distance!r}_w{width!r}_{direction}"


def parse_condition(path: Path) -> dict[str, Any] | None:
    """从文件名解析条件元数据；不匹配时返回 None"""
    match = FILENAME_PATTERN.match(path.name)
    if not match:
        return None
    try:
        return {
            "participant": match["participant"],
            "distance": float(match["distance"]),
            "width": float(match["width"]),
            "direction": match["direction"],
        }
    except ValueError:
        return None


def _check_timestamps(path: Path, trial_id: str, times: np.ndarray, rows: np.ndarray):
    steps = np.diff(times)
    if steps.size == 0:
        return
    bad = np.flatnonzero(steps <= 0)
    if bad.size:
        line = int(rows[bad[0] + 1]) + 2
        raise CorpusFormatError(f"trial {trial_id}: timestamps not strictly increasing", str(path), line)
    uneven = np.flatnonzero(np.abs(steps - steps[0]) > UNIFORM_TOLERANCE)
    if uneven.size:
        line = int(rows[uneven[0] + 1]) + 2
        raise CorpusFormatError(f"trial {trial_id}: non-uniform sampling", str(path), line)


def _read_csv(path: Path, meta: Mapping[str, Any]) -> list[RawTrial]:
    try:
        df = pd.read_csv(path, float_precision="round_trip")
    except pd.errors.EmptyDataError as e:
        raise CorpusFormatError("empty file", str(path), 1) from e
    except pd.errors.ParserError as e:
        raise CorpusFormatError(f"unparseable CSV: {e}", str(path)) from e

    missing = [c for c in CORPUS_COLUMNS if c not in df.columns]
    if missing:
        raise CorpusFormatError(f"missing columns {missing}", str(path), 1)
    if df.empty:
        raise CorpusFormatError("no samples", str(path), 2)

    for column in ("frame", "time_s", "pos_m"):
        numeric = pd.to_numeric(df[column], errors="coerce")
        bad = numeric.isna() | ~np.isfinite(numeric.fillna(0.0))
        if bad.any():
            row = int(np.flatnonzero(bad.to_numpy())[0])
            raise CorpusFormatError(f"non-numeric value in column '{column}'", str(path), row + 2)
        df[column] = numeric.astype(float)
    if df["trial_id"].isna().any():
        row = int(np.flatnonzero(df["trial_id"].isna().to_numpy())[0])
        raise CorpusFormatError("missing trial_id", str(path), row + 2)
    df["trial_id"] = df["trial_id"].astype(str)

    trials = []
    for trial_id, group in df.groupby("trial_id", sort=False):
        rows = group.index.to_numpy()
        times = group["time_s"].to_numpy()
        _check_timestamps(path, str(trial_id), times, rows)
        trials.append(
            RawTrial(
                trial_id=str(trial_id),
                participant=str(meta["participant"]),
                distance=float(meta["distance"]),
                width=float(meta["width"]),
                direction=meta["direction"],
                times=times,
                positions=group["pos_m"].to_numpy(),
            )
        )
    return trials


_FORMATS: dict[str, Callable[[Path, Mapping[str, Any]], list[RawTrial]]] = {"csv": _read_csv}


def register_corpus_format(name: str, reader: Callable[[Path, Mapping[str, Any]], list[RawTrial]]):
    """注册外部语料格式适配器"""
    _FORMATS[name] = reader


def _scale(trial: RawTrial, px_per_m: float) -> RawTrial:
    return replace(
        trial,
        positions=trial.positions / px_per_m,
        distance=trial.distance / px_per_m,
        width=trial.width / px_per_m,
    )


def _resolve_meta(path: Path, overrides: Mapping[str, Any]) -> dict[str, Any] | None:
    meta = parse_condition(path) or {}
    meta.update({k: v for k, v in overrides.items() if v is not None})
    required = ("participant", "distance", "width", "direction")
    if any(key not in meta for key in required):
        return None
    return meta


def load_corpus(
    path: str | Path,
    format: str = "csv",
    overrides: Mapping[str, Any] | None = None,
    px_per_m: float | None = None,
) -> list[RawTrial]:
    """加载单个语料文件或目录下的全部条件文件"""
    path = Path(path)
    overrides = dict(overrides or {})
    reader = _FORMATS.get(format)
    if reader is None:
        raise CorpusFormatError(f"unknown corpus format '{format}', expected one of {sorted(_FORMATS)}", str(path))
    if px_per_m is not None and not px_per_m > 0:
        raise CorpusFormatError(f"px_per_m must be positive, got {px_per_m}", str(path))

    if path.is_dir():
        files = sorted(path.glob(f"*.{format}"))
    elif path.is_file():
        files = [path]
    else:
        raise CorpusFormatError("corpus path does not exist", str(path))

    trials: list[RawTrial] = []
    for file in files:
        meta = _resolve_meta(file, overrides)
        if meta is None:
            if path.is_dir():
                logger.debug("Skipping {}: file name does not encode a condition", file)
                continue
            raise CorpusFormatError(
                "cannot determine participant/distance/width/direction from file name; pass them explicitly",
                str(file),
            )
        loaded = reader(file, meta)
        if px_per_m is not None:
            loaded = [_scale(t, px_per_m) for t in loaded]
        trials.extend(loaded)
        logger.debug("Loaded {} trials from {}", len(loaded), file)

    if not trials:
        raise CorpusFormatError("no trials found", str(path))
    logger.info("Loaded {} trials from {} file(s) under {}", len(trials), len(files), path)
    return trials


def group_by_condition(trials: Iterable[RawTrial]) -> dict[str, list[RawTrial]]:
    groups: dict[str, list[RawTrial]] = {}
    for trial in trials:
        groups.setdefault(trial.condition, []).append(trial)
    return groups


def trials_frame(trials: Iterable[RawTrial]) -> pd.DataFrame:
    """语料格式的 DataFrame"""
    frames = [
        pd.DataFrame(
            {
                "trial_id": trial.trial_id,
                "frame": np.arange(len(trial), dtype=int),
                "time_s": trial.times,
                "pos_m": trial.positions,
            }
        )
        for trial in trials
    ]
    return pd.concat(frames, ignore_index=True)


def write_corpus(trials: Iterable[RawTrial], directory: str | Path) -> list[Path]:
    """按条件写出 CSV 文件，返回写出的路径"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for condition, group in group_by_condition(trials).items():
        target = directory / f"{condition}.csv"
        trials_frame(group).to_csv(target, index=False)
        paths.append(target)
    logger.info("Wrote {} condition file(s) to {}", len(paths), directory)
    return paths
