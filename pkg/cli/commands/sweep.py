"""单参数扫描：每个网格点的轨迹摘要"""

from pathlib import Path

import numpy as np
import pandas as pd
import typer
from rich.table import Table

from src.dynamics import POSITION, VELOCITY
from src.exceptions import InputError
from src.metrics import has_overshoot, peak_velocity, terminal_std, time_to_target
from src.models import ModelFactory, TaskSpec, run_model
from src.utils import logger

from cli.commands.common import (
    ConfigOption,
    DOption,
    GammaOption,
    KOption,
    NmjOption,
    NsOption,
    OmegaFOption,
    OmegaROption,
    OmegaVOption,
    PxPerMOption,
    SigmaEOption,
    SigmaFOption,
    SigmaSOption,
    SigmaUOption,
    SigmaVOption,
    StartOption,
    StepSizeOption,
    StepsOption,
    TargetOption,
    WidthOption,
    ZetaOption,
    console,
    output_dir,
)
from cli.utils import (
    OptionResolver,
    build_task,
    handle_errors,
    load_run_config,
    model_params,
    parameter_name,
    write_csv,
)
from cli.utils.plots import plot_overlay

TASK_PARAMETERS = ("distance", "n")
SWEEP_COLUMNS = ["value", "peak_velocity_mps", "time_to_target_s", "terminal_std_m", "overshoot"]


def parse_grid(values: str | list | None) -> list[float]:
    """逗号分隔的字符串或列表 → 浮点网格"""
    if values is None:
        return []
    items = values.split(",") if isinstance(values, str) else list(values)
    try:
        return [float(v) for v in items if str(v).strip()]
    except ValueError as e:
        raise InputError(f"--values must be a comma-separated list of numbers: {e}") from None


def _task_at(task: TaskSpec, name: str, value: float, factor: float) -> TaskSpec:
    if name == "n":
        return task.with_updates(N=value)
    sign = np.sign(task.target - task.start) or 1.0
    return task.with_updates(target=task.start + sign * value * factor)


@handle_errors
def sweep(
    model: str | None = typer.Option(None, "--model", "-m", help="模型：2ol-eq | minjerk | lqr | lqg | elqg"),
    param: str | None = typer.Option(None, "--param", help="扫描的参数：模型参数名，或任务参数 distance / n"),
    values: str | None = typer.Option(None, "--values", help="网格取值，逗号分隔"),
    target: float | None = TargetOption,
    start: float | None = StartOption,
    width: float | None = WidthOption,
    n: int | None = StepsOption,
    h: float | None = StepSizeOption,
    px_per_m: float | None = PxPerMOption,
    k: float | None = KOption,
    d: float | None = DOption,
    zeta: float | None = ZetaOption,
    nmj: float | None = NmjOption,
    omega_r: float | None = OmegaROption,
    omega_v: float | None = OmegaVOption,
    omega_f: float | None = OmegaFOption,
    sigma_u: float | None = SigmaUOption,
    sigma_s: float | None = SigmaSOption,
    sigma_v: float | None = SigmaVOption,
    sigma_f: float | None = SigmaFOption,
    sigma_e: float | None = SigmaEOption,
    gamma: float | None = GammaOption,
    ns: float | None = NsOption,
    output: Path | None = typer.Option(None, "--output", "-o", help="输出目录"),
    svg: bool = typer.Option(True, "--svg/--no-svg", help="是否写出叠加 SVG 图"),
    config_file: Path | None = ConfigOption,
):
    """固定其余参数，沿一个参数的网格模拟"""
    resolver = OptionResolver(load_run_config(config_file))
    name = resolver.require("model", model)
    swept = str(resolver.require("param", param)).strip().lower().replace("-", "_")
    grid = parse_grid(resolver.get("values", values))
    if not grid:
        raise InputError("empty sweep grid: pass --values")
    model_class = ModelFactory.get_model_class(name)

    task = build_task(resolver, target, start, width, n, h, px_per_m)
    flags = dict(
        k=k, d=d, zeta=zeta, nmj=nmj, omega_r=omega_r, omega_v=omega_v, omega_f=omega_f, sigma_u=sigma_u,
        sigma_s=sigma_s, sigma_v=sigma_v, sigma_f=sigma_f, sigma_e=sigma_e, gamma=gamma, ns=ns,
    )  # fmt: skip
    fixed = model_params(resolver, flags)
    target_name = None if swept in TASK_PARAMETERS else parameter_name(swept)
    scale = resolver.get("px_per_m", px_per_m)
    factor = 1.0 / float(scale) if scale is not None else 1.0

    rows, curves = [], []
    for value in grid:
        if target_name is None:
            point_task = _task_at(task, swept, value, factor)
            params = fixed
        else:
            point_task = task
            params = fixed | {target_name: value}
        instance = ModelFactory.create(name, params)
        run = run_model(instance, point_task)
        positions = run.trajectory.component(POSITION)
        rows.append(
            {
                "value": value,
                "peak_velocity_mps": peak_velocity(run.trajectory.component(VELOCITY)),
                "time_to_target_s": time_to_target(positions, point_task.target, point_task.width, point_task.h),
                "terminal_std_m": terminal_std(run.distribution.component_std(POSITION)),
                "overshoot": has_overshoot(positions, point_task.start, point_task.target),
            }
        )
        curves.append((f"{swept}={value:g}", run.trajectory.times, positions))
        logger.debug("Sweep {} {}={} done", name, swept, value)

    out = output_dir(resolver.get("output", output), "output/sweep")
    frame = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    write_csv(out / "sweep.csv", frame)
    if svg:
        band_task = task if swept == "n" or target_name is not None else None
        plot_overlay(out / "sweep.svg", curves, band_task, title=f"{model_class.name}: {swept}")

    table = Table(title=f"{name} sweep over {swept}")
    for column in frame.columns:
        table.add_column(column)
    for record in frame.itertuples(index=False):
        table.add_row(*(f"{v:.6g}" if isinstance(v, float) else str(v) for v in record))
    console.print(table)
    console.print(f"Outputs written to {out}")
