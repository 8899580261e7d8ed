import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Any

import pandas as pd
import typer
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from src.data import RawTrial, group_by_condition, load_corpus, preprocess
from src.exceptions import InputError, PointingModelError
from src.fitting import FitConfig, fit
from src.models import ModelFactory
from src.utils import logger

from cli.commands.common import ConfigOption, PxPerMOption, SeedOption, console, output_dir
from cli.utils import OptionResolver, handle_errors, load_run_config, write_csv, write_json


def _select(
    trials: list[RawTrial], participant: str | None, direction: str | None, distance: float | None
) -> dict[str, list[RawTrial]]:
    groups = group_by_condition(trials)
    selected = {}
    for condition, group in groups.items():
        first = group[0]
        if participant is not None and first.participant != participant:
            continue
        if direction is not None and first.direction != direction:
            continue
        if distance is not None and abs(first.distance - distance) > 1e-9 * max(1.0, abs(distance)):
            continue
        selected[condition] = group
    return selected


def _fit_condition(model: str, trials: list[RawTrial], cfg: FitConfig, strip: bool, out: Path) -> dict[str, Any]:
    """单个条件：预处理 → 拟合 → 写出；失败记入汇总行而不中断批处理"""
    started = time.perf_counter()
    condition = trials[0].condition
    row: dict[str, Any] = {"condition": condition, "model": model}
    try:
        report = preprocess(trials, strip=strip)
        write_json(out / f"{condition}.ensemble.json", report.ensemble.to_json())
        result = fit(model, None, report.ensemble, cfg)
        write_json(out / f"{condition}.fit.json", result.to_dict())
    except PointingModelError as e:
        logger.warning("Fitting {} to {} failed: {}", model, condition, e)
        row.update(status="error", error=f"{type(e).__name__}: {e}", wall_time_s=time.perf_counter() - started)
        return row

    row.update(
        status="failed" if result.failed else "ok",
        trials=report.ensemble.count,
        N=report.ensemble.N,
        loss=result.loss,
        evals=result.evals,
        generations=result.generations,
        converged=result.converged,
        wall_time_s=time.perf_counter() - started,
    )
    row.update({f"param_{name}": value for name, value in result.params.items()})
    return row


@handle_errors
def fit_command(
    corpus: Path = typer.Argument(..., help="语料文件或目录", exists=True),
    model: str | None = typer.Option(None, "--model", "-m", help="模型：2ol-eq | minjerk | lqr | lqg | elqg"),
    participant: str | None = typer.Option(None, "--participant", help="只拟合该被试"),
    direction: str | None = typer.Option(None, "--direction", help="只拟合该方向（left | right）"),
    distance: float | None = typer.Option(None, "--distance", help="只拟合该距离的任务"),
    raw: bool = typer.Option(False, "--raw", help="跳过反应时间去除（已对齐的语料）"),
    jobs: int | None = typer.Option(None, "--jobs", "-j", help="并行拟合的条件数"),
    workers: int | None = typer.Option(None, "--workers", help="每个条件内并行评估损失的线程数"),
    population: int | None = typer.Option(None, "--population", help="种群规模"),
    max_generations: int | None = typer.Option(None, "--max-generations", help="最大代数"),
    tolerance: float | None = typer.Option(None, "--tolerance", help="收敛阈值"),
    patience: int | None = typer.Option(None, "--patience", help="收敛窗口（代）"),
    seed: int | None = SeedOption,
    px_per_m: float | None = PxPerMOption,
    output: Path | None = typer.Option(None, "--output", "-o", help="输出目录"),
    config_file: Path | None = ConfigOption,
):
    """按 (被试, 任务, 方向) 条件拟合模型参数"""
    resolver = OptionResolver(load_run_config(config_file))
    name = resolver.require("model", model)
    ModelFactory.get_model_class(name)
    cfg_values = {
        "population_size": resolver.get("population", population),
        "max_generations": resolver.get("max_generations", max_generations),
        "tolerance": resolver.get("tolerance", tolerance),
        "patience": resolver.get("patience", patience),
        "workers": resolver.get("workers", workers),
        "seed": resolver.get("seed", seed, 0),
    }
    cfg = FitConfig(**{k: v for k, v in cfg_values.items() if v is not None})
    jobs = int(resolver.get("jobs", jobs, 1))
    if jobs < 1:
        raise InputError(f"--jobs must be positive, got {jobs}")

    trials = load_corpus(corpus, px_per_m=resolver.get("px_per_m", px_per_m))
    selected = _select(
        trials,
        resolver.get("participant", participant),
        resolver.get("direction", direction),
        resolver.get("distance", distance),
    )
    if not selected:
        raise InputError("no condition matches the selection")
    out = output_dir(resolver.get("output", output), "output/fit")
    strip = not resolver.get("raw", raw or None, False)

    rows: dict[str, dict[str, Any]] = {}
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("{task.completed}/{task.total}"),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        task_id = progress.add_task(f"Fitting {name}", total=len(selected))
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            futures = {
                executor.submit(_fit_condition, name, group, cfg, strip, out): condition
                for condition, group in selected.items()
            }
            for future in as_completed(futures):
                rows[futures[future]] = future.result()
                progress.advance(task_id)

    ordered = [rows[condition] for condition in selected]
    write_csv(out / "fit_summary.csv", pd.DataFrame(ordered))

    table = Table(title=f"{name} fits")
    for column in ("condition", "status", "loss", "evals", "converged"):
        table.add_column(column)
    for row in ordered:
        loss = row.get("loss")
        table.add_row(
            row["condition"],
            row["status"],
            "" if loss is None else f"{loss:.6g}",
            str(row.get("evals", "")),
            str(row.get("converged", "")),
        )
    console.print(table)
    console.print(f"Outputs written to {out}")
