from collections.abc import Mapping

from src.exceptions import ParameterError
from src.models.base import PointingModel
from src.models.elqg import ELQGModel
from src.models.lqg import LQGModel
from src.models.lqr import LQRModel
from src.models.minjerk import MinJerkModel
from src.models.second_order_lag import SecondOrderLagModel
from src.models.task import MuscleConfig


class ModelFactory:
    """指向模型工厂"""

    _registry: dict[str, type[PointingModel]] = {
        "2ol-eq": SecondOrderLagModel,
        "minjerk": MinJerkModel,
        "lqr": LQRModel,
        "lqg": LQGModel,
        "elqg": ELQGModel,
    }

    @classmethod
    def register(cls, name: str, model_class: type[PointingModel]):
        """注册模型类"""
        cls._registry[name] = model_class

    @classmethod
    def get_model_class(cls, name: str) -> type[PointingModel]:
        model_class = cls._registry.get(name)
        if not model_class:
            raise ParameterError(f"unknown model '{name}', expected one of {sorted(cls._registry)}")
        return model_class

    @classmethod
    def create(cls, name: str, params: Mapping[str, float], muscle: MuscleConfig | None = None) -> PointingModel:
        """按名称与参数字典创建模型实例"""
        return cls.get_model_class(name).from_params(params, muscle)

    @classmethod
    def get_supported_models(cls) -> dict[str, str]:
        return {
            "2ol-eq": "二阶滞后 + 平衡点控制",
            "minjerk": "最小加加速度开环轨迹",
            "lqr": "线性二次调节器",
            "lqg": "信号相关噪声 LQG",
            "elqg": "扩展观测模型 LQG",
        }
