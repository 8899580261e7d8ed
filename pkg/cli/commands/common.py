"""多个命令共用的选项定义"""

from pathlib import Path

import typer
from rich.console import Console

console = Console()

ConfigOption = typer.Option(None, "--config", help="JSON 配置文件，键名与长选项一致", dir_okay=False)
PxPerMOption = typer.Option(None, "--px-per-m", help="像素/米换算；给出时位置、宽度与距离按像素输入")
SeedOption = typer.Option(None, "--seed", help="随机种子（默认 0）")

TargetOption = typer.Option(None, "--target", help="目标位置")
StartOption = typer.Option(None, "--start", help="起点位置（默认 0）")
WidthOption = typer.Option(None, "--width", help="目标宽度（默认 0.0141 m）")
StepsOption = typer.Option(None, "--n", help="步数 N（默认 485）")
StepSizeOption = typer.Option(None, "--h", help="步长 h（秒，默认 0.002）")

KOption = typer.Option(None, "--k", help="2OL-Eq 刚度 k")
DOption = typer.Option(None, "--d", help="2OL-Eq 阻尼 d")
ZetaOption = typer.Option(None, "--zeta", help="2OL-Eq 阻尼比 ζ（替代 d）")
NmjOption = typer.Option(None, "--nmj", help="MinJerk 冲刺步数 N_MJ")
OmegaROption = typer.Option(None, "--omega-r", help="控制代价权重 ω_r")
OmegaVOption = typer.Option(None, "--omega-v", help="速度代价权重 ω_v")
OmegaFOption = typer.Option(None, "--omega-f", help="力代价权重 ω_f")
SigmaUOption = typer.Option(None, "--sigma-u", help="信号相关控制噪声 σ_u")
SigmaSOption = typer.Option(None, "--sigma-s", help="LQG 观测噪声 σ_s")
SigmaVOption = typer.Option(None, "--sigma-v", help="E-LQG 速度感知噪声 σ_v")
SigmaFOption = typer.Option(None, "--sigma-f", help="E-LQG 力感知噪声 σ_f")
SigmaEOption = typer.Option(None, "--sigma-e", help="E-LQG 注视噪声 σ_e")
GammaOption = typer.Option(None, "--gamma", help="E-LQG 离心率噪声权重 γ")
NsOption = typer.Option(None, "--ns", help="E-LQG 扫视步 n_s")


def output_dir(value: Path | None, default: str) -> Path:
    path = Path(value) if value is not None else Path(default)
    path.mkdir(parents=True, exist_ok=True)
    return path
