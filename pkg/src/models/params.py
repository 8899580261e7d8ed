"""
模型参数类型

所有参数类型不可变；构造失败时 pydantic 的 ValidationError 会指出出错字段，
通过 build_params 转换为 ParameterError。
"""

import math
from collections.abc import Mapping
from typing import Any, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.exceptions import ParameterError


class _Params(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False, extra="forbid")


class TwoOLParams(_Params):
    """二阶滞后（弹簧-阻尼）参数"""

    k: float = Field(..., gt=0, description="刚度 k（1/s²）")
    d: float = Field(..., gt=0, description="阻尼 d（1/s）")

    @property
    def zeta(self) -> float:
        """阻尼比 ζ = d / (2√k)"""
        return self.d / (2.0 * math.sqrt(self.k))

    @classmethod
    def from_damping_ratio(cls, k: float, zeta: float) -> "TwoOLParams":
        return build_params(cls, {"k": k, "d": 2.0 * zeta * math.sqrt(k) if k > 0 else zeta})


class MinJerkParams(_Params):
    n_mj: float = Field(..., ge=0, description="冲刺步数 N_MJ（可取小数）")


class LQCostWeights(_Params):
    """二次代价权重"""

    omega_v: float = Field(..., ge=0, description="速度代价权重 ω_v")
    omega_f: float = Field(..., ge=0, description="力代价权重 ω_f")
    omega_r: float = Field(..., gt=0, description="控制代价权重 ω_r")

    def scaled(self, factor: float) -> "LQCostWeights":
        return LQCostWeights(omega_v=self.omega_v * factor, omega_f=self.omega_f * factor,
                             omega_r=self.omega_r * factor)


class LQGNoiseParams(_Params):
    sigma_u: float = Field(..., ge=0, description="信号相关控制噪声 σ_u")
    sigma_s: float = Field(default=0.0, ge=0, description="观测噪声尺度 σ_s")


class ELQGParams(_Params):
    """扩展观测模型的噪声与扫视参数"""

    sigma_u: float = Field(..., ge=0, description="信号相关控制噪声 σ_u")
    sigma_v: float = Field(default=0.0, ge=0, description="速度感知噪声 σ_v")
    sigma_f: float = Field(default=0.0, ge=0, description="力感知噪声 σ_f")
    sigma_e: float = Field(default=0.0, ge=0, description="注视噪声 σ_e")
    gamma: float = Field(default=0.0, ge=0, description="离心率相关的位置感知噪声权重 γ")
    n_s: float = Field(default=0.0, ge=0, description="扫视步 n_s（可取小数）")


P = TypeVar("P", bound=BaseModel)


def build_params(cls: type[P], values: Mapping[str, Any]) -> P:
    """构造参数对象，校验失败时抛出 ParameterError 并指明字段"""
    try:
        return cls(**dict(values))
    except ValidationError as e:
        fields = ", ".join(".".join(str(p) for p in err["loc"]) or cls.__name__ for err in e.errors())
        first = e.errors()[0]["msg"] if e.errors() else str(e)
        raise ParameterError(f"invalid {cls.__name__} field(s) {fields}: {first}") from e


def pick_fields(values: Mapping[str, Any], cls: type[BaseModel]) -> dict[str, Any]:
    """只保留 cls 声明过的字段"""
    return {name: values[name] for name in cls.model_fields if name in values}
