"""
默认参数边界

参数辨识时各模型的搜索区间。上界为 None 表示取任务总步数 N。
数值按字面值读取（例如 10e-2 即 0.1）。
"""

from typing import Literal

from pydantic import BaseModel, Field


class ParameterBoundInfo(BaseModel):
    """单个参数的搜索区间"""

    name: str = Field(..., description="参数名")
    lower: float = Field(..., description="下界")
    upper: float | None = Field(..., description="上界；None 表示取任务步数 N")
    kind: Literal["continuous", "relaxed-integer"] = Field(default="continuous", description="参数类型")
    description: str = Field(default="", description="说明")


# ============================================================
# 默认参数边界
# ============================================================

_LQ_WEIGHTS: list[ParameterBoundInfo] = [
    ParameterBoundInfo(name="omega_r", lower=4e-18, upper=7e-3, description="控制代价权重 ω_r"),
    ParameterBoundInfo(name="omega_v", lower=0.0, upper=10.0, description="速度代价权重 ω_v"),
    ParameterBoundInfo(name="omega_f", lower=0.0, upper=10.0, description="力代价权重 ω_f"),
]

DEFAULT_PARAMETER_BOUNDS: dict[str, list[ParameterBoundInfo]] = {
    "2ol-eq": [
        ParameterBoundInfo(name="k", lower=0.0, upper=500.0, description="刚度 k（1/s²）"),
        ParameterBoundInfo(name="d", lower=0.0, upper=500.0, description="阻尼 d（1/s）"),
    ],
    "minjerk": [
        ParameterBoundInfo(name="n_mj", lower=0.0, upper=None, kind="relaxed-integer", description="冲刺步数 N_MJ"),
    ],
    "lqr": [
        ParameterBoundInfo(name="omega_r", lower=2e-9, upper=20.0, description="控制代价权重 ω_r"),
        ParameterBoundInfo(name="omega_v", lower=0.0, upper=10e-2, description="速度代价权重 ω_v"),
        ParameterBoundInfo(name="omega_f", lower=0.0, upper=10e-4, description="力代价权重 ω_f"),
    ],
    "lqg": [
        *_LQ_WEIGHTS,
        ParameterBoundInfo(name="sigma_u", lower=10e-10, upper=5.0, description="信号相关控制噪声 σ_u"),
        ParameterBoundInfo(name="sigma_s", lower=0.0, upper=5.0, description="观测噪声尺度 σ_s"),
    ],
    "elqg": [
        *_LQ_WEIGHTS,
        ParameterBoundInfo(name="sigma_u", lower=10e-10, upper=5.0, description="信号相关控制噪声 σ_u"),
        ParameterBoundInfo(name="sigma_v", lower=0.0, upper=10.0, description="速度感知噪声 σ_v"),
        ParameterBoundInfo(name="sigma_f", lower=0.0, upper=50.0, description="力感知噪声 σ_f"),
        ParameterBoundInfo(name="sigma_e", lower=0.0, upper=5.0, description="注视噪声 σ_e"),
        ParameterBoundInfo(name="gamma", lower=4e-18, upper=100.0, description="离心率噪声权重 γ"),
        ParameterBoundInfo(name="n_s", lower=0.0, upper=None, kind="relaxed-integer", description="扫视步 n_s"),
    ],
}

MODEL_NAMES: tuple[str, ...] = tuple(DEFAULT_PARAMETER_BOUNDS)
