"""
应用配置模块

使用 Pydantic BaseModel 实现配置管理，支持：
- 从 TOML 文件加载用户配置
- 仅保存用户修改过的配置项
- 默认配置定义在代码中
"""

import os
from pathlib import Path
from typing import Any

import tomli
import tomli_w
from pydantic import BaseModel, Field, ValidationError

from src.utils.logging_config import logger


class Config(BaseModel):
    """应用配置类"""

    # ============================================================
    # 基础配置
    # ============================================================
    save_dir: str = Field(default="saves", description="保存目录（日志、用户配置）")

    # ============================================================
    # 离散化与肌肉模型
    # ============================================================
    step_size: float = Field(default=0.002, gt=0, description="前向 Euler 离散步长 h（秒）")
    tau1: float = Field(default=0.04, gt=0, description="肌肉激活时间常数 τ1（秒）")
    tau2: float = Field(default=0.04, gt=0, description="肌肉力时间常数 τ2（秒）")
    mass: float = Field(default=1.0, gt=0, description="指针质量（kg）")

    # ============================================================
    # LQG / E-LQG 坐标下降
    # ============================================================
    lqg_max_iterations: int = Field(default=20, ge=1, description="L/K 交替优化的最大迭代次数")
    lqg_tolerance: float = Field(default=1e-3, gt=0, description="目标函数相对改进阈值 ε_J")

    # ============================================================
    # 差分进化
    # ============================================================
    de_mutation: float = Field(default=0.8, gt=0, description="差分权重 F")
    de_crossover: float = Field(default=0.9, ge=0, le=1, description="二项交叉率 CR")
    de_min_population: int = Field(default=15, ge=4, description="最小种群规模")
    de_population_factor: int = Field(default=5, ge=1, description="种群规模 = max(最小规模, 因子 × 维数)")
    de_max_generations: int = Field(default=300, ge=0, description="最大代数")
    de_tolerance: float = Field(default=1e-8, ge=0, description="最优损失相对改进阈值")
    de_patience: int = Field(default=30, ge=1, description="收敛判断窗口（代）")

    # ============================================================
    # 评价指标
    # ============================================================
    kl_regularization: float = Field(default=1e-12, ge=0, description="奇异协方差的 KL 正则项")
    psd_tolerance: float = Field(default=1e-9, ge=0, description="协方差半正定检查容差")
    band_z: float = Field(default=1.96, gt=0, description="置信带宽度（标准差倍数）")

    # ============================================================
    # 数据预处理
    # ============================================================
    onset_velocity_fraction: float = Field(default=0.01, gt=0, lt=1, description="运动起点速度阈值（峰值比例）")
    onset_persistence_frames: int = Field(default=20, ge=1, description="加速度符号需保持的帧数")
    outlier_sigma: float = Field(default=3.0, gt=0, description="离群判定的标准差倍数")
    savgol_window: int = Field(default=15, ge=5, description="Savitzky-Golay 窗口长度（帧）")
    savgol_order: int = Field(default=3, ge=2, description="Savitzky-Golay 多项式阶数")
    default_width: float = Field(default=0.0141, gt=0, description="默认目标宽度 W（米）")

    # 内部状态
    _config_file: Path | None = None
    _user_modified_fields: set[str] = set()

    model_config = {"arbitrary_types_allowed": True, "extra": "allow", "validate_assignment": True}

    def __init__(self, **data):
        super().__init__(**data)
        self._setup_paths()
        self._load_user_config()

    def _setup_paths(self):
        """设置配置文件路径"""
        self.save_dir = os.getenv("SAVE_DIR") or self.save_dir
        self._config_file = Path(self.save_dir) / "config" / "base.toml"
        self._config_file.parent.mkdir(parents=True, exist_ok=True)

    def _load_user_config(self):
        """从 TOML 文件加载用户配置"""
        if not self._config_file or not self._config_file.exists():
            logger.debug("Config file not found, using defaults: {}", self._config_file)
            return

        logger.info("Loading config from {}", self._config_file)
        try:
            with open(self._config_file, "rb") as f:
                user_config = tomli.load(f)
        except (OSError, tomli.TOMLDecodeError) as e:
            logger.error("Failed to load config from {}: {}", self._config_file, e)
            return

        self._user_modified_fields = set(user_config.keys())
        self.update(user_config)

    @property
    def config_file(self) -> Path | None:
        return self._config_file

    def save(self):
        """保存配置到 TOML 文件（仅保存与默认值不同的字段，save_dir 由环境变量决定，不写入）"""
        if not self._config_file:
            logger.warning("Config file path not set")
            return

        default_config = Config.model_construct()
        user_modified = {}
        for field_name in Config.model_fields:
            if field_name == "save_dir":
                continue
            current_value = getattr(self, field_name)
            if current_value != getattr(default_config, field_name):
                user_modified[field_name] = current_value

        try:
            with open(self._config_file, "wb") as f:
                tomli_w.dump(user_modified, f)
            logger.info("Config saved to {}", self._config_file)
        except OSError as e:
            logger.error("Failed to save config to {}: {}", self._config_file, e)
            raise

    def dump_config(self) -> dict[str, Any]:
        """导出配置为字典，附带字段说明"""
        config_dict = self.model_dump()
        config_dict["_config_items"] = {
            name: {"des": info.description, "default": info.default}
            for name, info in Config.model_fields.items()
        }
        return config_dict

    def update(self, other: dict):
        """批量更新配置；未知键只记录警告"""
        for key, value in other.items():
            if key in Config.model_fields:
                try:
                    setattr(self, key, value)
                except ValidationError as e:
                    logger.warning("Ignoring invalid config value {}={!r}: {}", key, value, e.errors()[0]["msg"])
            else:
                logger.warning("Unknown config key: {}", key)


config = Config()
