from pathlib import Path

import numpy as np
import typer

from src.data import synthesize_corpus, trials_frame
from src.dynamics import POSITION, VELOCITY
from src.exceptions import InputError
from src.metrics import time_to_target
from src.models import ModelFactory, run_model
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
    SeedOption,
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
    distribution_document,
    handle_errors,
    load_run_config,
    model_params,
    trajectory_frame,
    write_csv,
    write_json,
)
from cli.utils.plots import plot_trajectory


@handle_errors
def simulate(
    model: str | None = typer.Option(None, "--model", "-m", help="模型：2ol-eq | minjerk | lqr | lqg | elqg"),
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
    seed: int | None = SeedOption,
    samples: int | None = typer.Option(None, "--samples", help="额外写出的随机试验条数（语料格式）"),
    output: Path | None = typer.Option(None, "--output", "-o", help="输出目录"),
    svg: bool = typer.Option(True, "--svg/--no-svg", help="是否写出 SVG 图"),
    config_file: Path | None = ConfigOption,
):
    """用给定参数模拟一次指向运动"""
    resolver = OptionResolver(load_run_config(config_file))
    name = resolver.require("model", model)
    task = build_task(resolver, target, start, width, n, h, px_per_m)
    flags = dict(
        k=k, d=d, zeta=zeta, nmj=nmj, omega_r=omega_r, omega_v=omega_v, omega_f=omega_f, sigma_u=sigma_u,
        sigma_s=sigma_s, sigma_v=sigma_v, sigma_f=sigma_f, sigma_e=sigma_e, gamma=gamma, ns=ns,
    )  # fmt: skip
    instance = ModelFactory.create(name, model_params(resolver, flags))
    seed = int(resolver.get("seed", seed, 0))
    samples = int(resolver.get("samples", samples, 0))
    if samples < 0:
        raise InputError(f"--samples must be nonnegative, got {samples}")
    out = output_dir(resolver.get("output", output), "output/simulate")

    run = run_model(instance, task)
    trajectory = run.trajectory
    acceleration = instance.acceleration(trajectory)
    meta = {"model": name, "params": instance.params_dict(), "task": task.to_dict(), "seed": seed}

    write_csv(out / "trajectory.csv", trajectory_frame(trajectory, acceleration))
    write_json(out / "params.json", meta)
    if instance.stochastic:
        write_json(out / "distribution.json", distribution_document(run.distribution, meta))
    if samples:
        trials = synthesize_corpus(instance, task, samples, seed)
        write_csv(out / "samples.csv", trials_frame(trials))
    if svg:
        plot_trajectory(
            out / "trajectory.svg",
            trajectory.times,
            trajectory.component(POSITION),
            trajectory.component(VELOCITY),
            acceleration,
            task,
            run.distribution.component_std(POSITION) if instance.stochastic else None,
            run.distribution.component_std(VELOCITY) if instance.stochastic else None,
            title=repr(instance),
        )

    positions = trajectory.component(POSITION)
    reach = time_to_target(positions, task.target, task.width, task.h)
    logger.info("Simulated {} over N={} steps, outputs in {}", name, task.N, out)
    console.print(
        f"[bold green]{name}[/bold green] final position {positions[-1]:.6g} m "
        f"(target {task.target:.6g} m), time to target "
        f"{'not reached' if np.isnan(reach) else f'{reach:.3f} s'}"
    )
    console.print(f"Outputs written to {out}")
