"""
命令行参数解析

--config 指向一个 JSON 对象，键名与长选项一致（短横线或下划线均可）。
显式选项优先于配置文件，配置文件优先于默认值。
"""

from pathlib import Path
from typing import Any

from src.config import config
from src.exceptions import InputError, ParameterError
from src.models import TaskSpec

from cli.utils.io import read_json

# 选项名 → 模型参数名
PARAMETER_FLAGS: dict[str, str] = {
    "k": "k",
    "d": "d",
    "zeta": "zeta",
    "nmj": "n_mj",
    "n_mj": "n_mj",
    "omega_r": "omega_r",
    "omega_v": "omega_v",
    "omega_f": "omega_f",
    "sigma_u": "sigma_u",
    "sigma_s": "sigma_s",
    "sigma_v": "sigma_v",
    "sigma_f": "sigma_f",
    "sigma_e": "sigma_e",
    "gamma": "gamma",
    "ns": "n_s",
    "n_s": "n_s",
}


def normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "_")


def load_run_config(path: Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    data = read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: config file must contain a JSON object")
    return {normalize_key(k): v for k, v in data.items()}


class OptionResolver:
    """按 选项 > 配置文件 > 默认值 取值"""

    def __init__(self, file_values: dict[str, Any]):
        self.file_values = file_values

    def get(self, name: str, flag_value: Any, default: Any = None) -> Any:
        if flag_value is not None:
            return flag_value
        return self.file_values.get(name, default)

    def require(self, name: str, flag_value: Any) -> Any:
        value = self.get(name, flag_value)
        if value is None:
            raise ParameterError(f"missing required option --{name.replace('_', '-')}")
        return value


def model_params(resolver: OptionResolver, flags: dict[str, float | None]) -> dict[str, float]:
    """收集已给出的模型参数（选项名映射到参数名）"""
    params: dict[str, float] = {}
    for flag, name in PARAMETER_FLAGS.items():
        value = resolver.get(flag, flags.get(flag))
        if value is not None:
            params[name] = float(value)
    return params


def parameter_name(flag: str) -> str:
    key = normalize_key(flag)
    if key not in PARAMETER_FLAGS:
        raise ParameterError(f"unknown parameter '{flag}', expected one of {sorted(set(PARAMETER_FLAGS.values()))}")
    return PARAMETER_FLAGS[key]


def build_task(
    resolver: OptionResolver,
    target: float | None,
    start: float | None,
    width: float | None,
    n: int | None,
    h: float | None,
    px_per_m: float | None,
) -> TaskSpec:
    """由选项构造任务；给出 --px-per-m 时位置量按像素输入"""
    scale = resolver.get("px_per_m", px_per_m)
    if scale is not None and not float(scale) > 0:
        raise ParameterError(f"--px-per-m must be positive, got {scale}")
    factor = 1.0 / float(scale) if scale is not None else 1.0
    given_width = resolver.get("width", width)
    return TaskSpec(
        target=float(resolver.require("target", target)) * factor,
        start=float(resolver.get("start", start, 0.0)) * factor,
        width=float(given_width) * factor if given_width is not None else config.default_width,
        N=int(resolver.get("n", n, 485)),
        h=float(resolver.get("h", h, config.step_size)),
    )
