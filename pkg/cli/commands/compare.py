"""模型与参考数据的指标对比"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import typer
from rich.table import Table

from src.data import TrajectoryEnsemble, condition_name, group_by_condition, load_corpus, preprocess
from src.data.filters import reference_acceleration
from src.dynamics import POSITION, VELOCITY
from src.exceptions import InputError
from src.fitting import FitResult
from src.metrics import GaussianSeries, PositionSeries, clip_to_common_length, max_error, mkl, mwd, sse
from src.models import ModelFactory, TaskSpec, run_model
from src.utils import logger

from cli.commands.common import ConfigOption, PxPerMOption, console, output_dir
from cli.utils import OptionResolver, handle_errors, load_run_config, read_json, write_csv

METRIC_COLUMNS = ("sse_pos", "max_pos", "sse_vel", "max_vel", "sse_acc", "max_acc", "mwd", "mkl")


@dataclass(frozen=True)
class SeriesBundle:
    """一组用于对比的序列：位置、速度、加速度与 (位置, 速度) 分布"""

    position: PositionSeries
    velocity: PositionSeries
    acceleration: PositionSeries
    gaussian: GaussianSeries | None

    def __len__(self) -> int:
        return len(self.position)

    def clip(self, length: int) -> "SeriesBundle":
        return SeriesBundle(
            self.position.clip(length),
            self.velocity.clip(length),
            self.acceleration.clip(length),
            self.gaussian.clip(length) if self.gaussian is not None else None,
        )


@dataclass(frozen=True)
class Reference:
    condition: str
    distance: float
    task: TaskSpec
    series: SeriesBundle


def _ensemble_bundle(ensemble: TrajectoryEnsemble) -> SeriesBundle:
    position = ensemble.to_position_series()
    return SeriesBundle(
        position,
        ensemble.to_velocity_series(),
        reference_acceleration(position),
        ensemble.to_gaussian_series(),
    )


def _model_bundle(result: FitResult, task: TaskSpec) -> SeriesBundle:
    model = ModelFactory.create(result.model, result.params)
    run = run_model(model, task)
    trajectory = run.trajectory
    return SeriesBundle(
        PositionSeries(trajectory.component(POSITION), task.h),
        PositionSeries(trajectory.component(VELOCITY), task.h),
        PositionSeries(model.acceleration(trajectory), task.h),
        GaussianSeries.from_distribution(run.distribution) if model.stochastic else None,
    )


def _condition_of(result: FitResult) -> str | None:
    meta = result.condition or {}
    keys = ("participant", "distance", "width", "direction")
    if not all(key in meta for key in keys):
        return None
    return condition_name(*(meta[key] for key in keys))


def _load_fit_result(path: Path) -> FitResult:
    data = read_json(path)
    if not isinstance(data, dict) or "model" not in data or "params" not in data:
        raise InputError(f"{path}: not a fit result document")
    return FitResult.from_dict(data)


def _ensembles(path: Path, strip: bool, px_per_m: float | None) -> list[TrajectoryEnsemble]:
    groups = group_by_condition(load_corpus(path, px_per_m=px_per_m))
    return [preprocess(trials, strip=strip).ensemble for trials in groups.values()]


def _load_references(path: Path, strip: bool, px_per_m: float | None) -> list[Reference]:
    if path.suffix == ".json":
        result = _load_fit_result(path)
        task_data = (result.condition or {}).get("task")
        if task_data is None:
            raise InputError(f"{path}: fit result does not record its task")
        task = TaskSpec.from_dict(task_data)
        condition = _condition_of(result) or path.stem
        return [Reference(condition, task.distance, task, _model_bundle(result, task))]
    return [
        Reference(e.condition, e.distance, e.task(), _ensemble_bundle(e)) for e in _ensembles(path, strip, px_per_m)
    ]


def _match(references: list[Reference], condition: str | None) -> Reference | None:
    if len(references) == 1:
        return references[0]
    return next((r for r in references if r.condition == condition), None)


def _metrics(candidate: SeriesBundle, reference: SeriesBundle) -> dict[str, float]:
    row = {
        "sse_pos": sse(candidate.position, reference.position),
        "max_pos": max_error(candidate.position, reference.position),
        "sse_vel": sse(candidate.velocity, reference.velocity),
        "max_vel": max_error(candidate.velocity, reference.velocity),
        "sse_acc": sse(candidate.acceleration, reference.acceleration),
        "max_acc": max_error(candidate.acceleration, reference.acceleration),
        "mwd": np.nan,
        "mkl": np.nan,
    }
    if candidate.gaussian is not None and reference.gaussian is not None:
        row["mwd"] = mwd(candidate.gaussian, reference.gaussian)
        row["mkl"] = mkl(candidate.gaussian, reference.gaussian)
    return row


def _check_units(reference: Reference, distance: float, source: str):
    if abs(reference.distance - distance) > 1e-6 * max(1.0, abs(reference.distance)):
        raise InputError(
            f"{source}: task distance {distance!r} does not match the reference distance {reference.distance!r}"
            " (check --px-per-m)"
        )


def compare_rows(
    references: list[Reference], results: list[tuple[str, FitResult]], externals: list[tuple[str, list]]
) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for source, result in results:
        reference = _match(references, _condition_of(result))
        if reference is None:
            logger.warning("No reference condition for {} ({})", source, _condition_of(result))
            continue
        candidate = _model_bundle(result, reference.task)
        row = {"condition": reference.condition, "source": source, "kind": "model", "length": len(candidate)}
        rows.append(row | _metrics(candidate, reference.series))

    for source, ensembles in externals:
        for ensemble in ensembles:
            reference = _match(references, ensemble.condition)
            if reference is None:
                logger.warning("No reference condition for {} ({})", source, ensemble.condition)
                continue
            _check_units(reference, ensemble.distance, source)
            (candidate, ref), length = clip_to_common_length(_ensemble_bundle(ensemble), reference.series)
            if length < len(reference.series) or length < ensemble.N + 1:
                logger.info("Clipped {} and reference {} to {} frames", source, reference.condition, length)
            row = {"condition": reference.condition, "source": source, "kind": "external", "length": length}
            rows.append(row | _metrics(candidate, ref))
    return rows


def aggregate(rows: list[dict[str, Any]]) -> pd.DataFrame:
    """逐条件行 + 每个来源一行 ALL 平均"""
    frame = pd.DataFrame(rows, columns=["condition", "source", "kind", "length", *METRIC_COLUMNS])
    if frame.empty:
        return frame
    totals = frame.groupby(["source", "kind"], sort=False)[["length", *METRIC_COLUMNS]].mean().reset_index()
    totals.insert(0, "condition", "ALL")
    return pd.concat([frame, totals], ignore_index=True)


@handle_errors
def compare(
    reference: Path | None = typer.Option(None, "--reference", help="参考语料（文件或目录）或拟合结果 JSON"),
    result: list[Path] | None = typer.Option(None, "--result", help="拟合结果 JSON，可重复"),
    external: list[Path] | None = typer.Option(None, "--external", help="外部轨迹语料，可重复"),
    raw: bool = typer.Option(False, "--raw", help="跳过反应时间去除"),
    px_per_m: float | None = PxPerMOption,
    output: Path | None = typer.Option(None, "--output", "-o", help="输出目录"),
    config_file: Path | None = ConfigOption,
):
    """用 SSE / 最大误差 / MWD / MKL 比较模型与数据"""
    resolver = OptionResolver(load_run_config(config_file))
    reference_path = Path(resolver.require("reference", reference))
    result_paths = [Path(p) for p in (result or resolver.get("result", None, []))]
    external_paths = [Path(p) for p in (external or resolver.get("external", None, []))]
    if not result_paths and not external_paths:
        raise InputError("nothing to compare: pass at least one --result or --external")
    strip = not resolver.get("raw", raw or None, False)
    scale = resolver.get("px_per_m", px_per_m)

    references = _load_references(reference_path, strip, scale)
    results = [(p.stem.removesuffix(".fit"), _load_fit_result(p)) for p in result_paths]
    externals = [(p.stem, _ensembles(p, strip, scale)) for p in external_paths]
    table_frame = aggregate(compare_rows(references, results, externals))
    if table_frame.empty:
        raise InputError("no comparison could be matched to a reference condition")

    out = output_dir(resolver.get("output", output), "output/compare")
    write_csv(out / "comparison.csv", table_frame)

    table = Table(title="comparison")
    for column in table_frame.columns:
        table.add_column(column)
    for record in table_frame.itertuples(index=False):
        table.add_row(*(f"{v:.6g}" if isinstance(v, float) else str(v) for v in record))
    console.print(table)
    console.print(f"Outputs written to {out}")
