"""SVG 折线图（matplotlib，Agg 后端）"""

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from src.config import config  # noqa: E402
from src.models import TaskSpec  # noqa: E402

plt.rcParams["svg.hashsalt"] = "pointing-ofc"
plt.rcParams["svg.fonttype"] = "none"

_SVG_METADATA = {"Date": None, "Creator": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)
    return path


def _band(ax, times, mean, std):
    if std is None:
        return
    z = config.band_z
    ax.fill_between(times, mean - z * std, mean + z * std, alpha=0.25, linewidth=0)


def plot_trajectory(
    path: Path,
    times: np.ndarray,
    position: np.ndarray,
    velocity: np.ndarray,
    acceleration: np.ndarray,
    task: TaskSpec,
    position_std: np.ndarray | None = None,
    velocity_std: np.ndarray | None = None,
    title: str = "",
) -> Path:
    """位置 / 速度 / 加速度三联图，带目标区与 ±z·std 置信带"""
    fig, axes = plt.subplots(3, 1, sharex=True, figsize=(6.4, 7.2))
    axes[0].axhspan(task.target - task.width / 2, task.target + task.width / 2, color="tab:green", alpha=0.2)
    axes[0].plot(times, position, color="tab:blue")
    _band(axes[0], times, position, position_std)
    axes[0].set_ylabel("position (m)")
    axes[1].plot(times, velocity, color="tab:orange")
    _band(axes[1], times, velocity, velocity_std)
    axes[1].set_ylabel("velocity (m/s)")
    axes[2].plot(times, acceleration, color="tab:red")
    axes[2].set_ylabel("acceleration (m/s²)")
    axes[2].set_xlabel("time (s)")
    if title:
        axes[0].set_title(title)
    fig.tight_layout()
    return _save(fig, path)


def plot_overlay(
    path: Path,
    curves: Sequence[tuple[str, np.ndarray, np.ndarray]],
    task: TaskSpec | None = None,
    ylabel: str = "position (m)",
    title: str = "",
) -> Path:
    """多条 (标签, 时间, 数值) 曲线叠加"""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if task is not None:
        ax.axhspan(task.target - task.width / 2, task.target + task.width / 2, color="tab:green", alpha=0.2)
    for label, times, values in curves:
        ax.plot(times, values, label=label)
    ax.set_xlabel("time (s)")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if curves:
        ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, path)
