"""
配置管理模块

使用 Pydantic Settings 管理验证引擎的全部默认参数。
为保证可复现，只接受显式传入的参数（CLI 标志 / 测试代码），不读取环境变量或 .env 文件。
"""

from functools import lru_cache

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """验证引擎配置"""

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
        frozen=True,
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # 只保留初始化参数来源
        return (init_settings,)

    # q 级数截断配置（单位 q^{1/24}）
    order24: int = Field(
        default=4800,
        gt=0,
        description="精确 q 级数检查的截断阶（q^{1/24} 单位，默认 q^200）",
    )

    # L 值级数路线
    lseries_terms: int = Field(
        default=500,
        ge=1,
        description="近似函数方程的项数 M",
    )
    lseries_tolerance: float = Field(
        default=1e-12,
        gt=0,
        description="近似函数方程截断误差上限",
    )

    # theta 积分路线（Gauss-Legendre 分段求积）
    quad_panels_per_unit: int = Field(default=4, ge=1, description="每单位 u 的分段数")
    quad_nodes: int = Field(default=20, ge=4, description="每段 Gauss-Legendre 节点数")
    quad_crossover: float = Field(default=0.25, gt=0, description="直接级数与模变换求值的分界点 u0")
    quad_upper: float = Field(default=30.0, gt=0, description="积分上限 U（之后被积函数 < 1e-18）")
    quad_tolerance: float = Field(default=1e-9, gt=0, description="求积误差上限")

    # 超几何级数
    hyp_terms: int = Field(
        default=1_000_000,
        ge=1000,
        description="3F2(1) 直接求和项数（其余由尾项模型给出）",
    )

    # 并行与随机附加采样点
    parallelism: int = Field(default=4, ge=1, description="并行检查数")
    seed: int | None = Field(default=None, description="附加随机采样点的种子（None 表示不附加）")

    # 各类检查容差
    tol_seriescal1: float = Field(default=1e-10, gt=0)
    tol_eta_involution: float = Field(default=1e-10, gt=0)
    tol_ramanujan_param: float = Field(default=1e-9, gt=0)
    tol_measure: float = Field(default=1e-6, gt=0)
    tol_log_expansion: float = Field(default=1e-10, gt=0)
    tol_beta_table: float = Field(default=1e-11, gt=0)
    tol_elementary: float = Field(default=1e-9, gt=0)
    tol_theorem: float = Field(default=1e-7, gt=0)
    tol_cross_method: float = Field(default=1e-8, gt=0)
    tol_ftilde_routes: float = Field(default=1e-9, gt=0)
    tol_thomae: float = Field(default=2e-10, gt=0)
    tol_regulator: float = Field(default=1e-6, gt=0)

    log_level: str = Field(default="WARNING", description="CLI 日志级别")

    @model_validator(mode="after")
    def validate_order(self) -> "Settings":
        """验证截断阶"""
        if self.order24 % 24 != 0:
            raise ValueError(f"order24 必须是 24 的倍数: {self.order24}")
        return self

    def with_overrides(self, **overrides: object) -> "Settings":
        """返回覆盖部分字段后的新配置（忽略值为 None 的覆盖项）"""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return Settings(**data)


@lru_cache
def get_settings() -> Settings:
    """
    获取默认配置（单例模式）

    Returns:
        Settings: 默认配置实例
    """
    return Settings()
