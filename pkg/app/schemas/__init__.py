"""
Pydantic Schemas

定义跨边界传递的数据结构：超几何参数、求积配置、L 值结果、检查报告、
调节子常数，以及 HTTP 请求体 / 响应体与 CLI 配置。
"""

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.config import Settings
from app.models import CheckStatus, LValueMethod, OutputMode, RealPeriod


# ============== 超几何参数 ==============

class HypParams(BaseModel):
    """3F2[a, b, c; e, f | 1] 的参数"""
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    e: float
    f: float

    @field_validator("a", "b", "c", "e", "f")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"参数必须是有限实数: {v}")
        return v

    @property
    def s(self) -> float:
        """收敛裕量 s = e + f - a - b - c"""
        return self.e + self.f - self.a - self.b - self.c

    @classmethod
    def of(cls, a: float, b: float, c: float, e: float, f: float) -> "HypParams":
        return cls(a=a, b=b, c=c, e=e, f=f)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.a, self.b, self.c, self.e, self.f)

    def canonical(self) -> "HypParams":
        """分子参数、分母参数分别排序（3F2 对两组参数各自对称）"""
        a, b, c = sorted((self.a, self.b, self.c))
        e, f = sorted((self.e, self.f))
        return HypParams(a=a, b=b, c=c, e=e, f=f)


class FtildeParams(BaseModel):
    """F~(alpha, beta) 的参数"""
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(..., gt=0, description="alpha > 0")
    beta: float = Field(..., gt=0, description="beta > 0")


class HypValue(BaseModel):
    """3F2(1) 的数值与误差估计"""
    value: float = Field(..., description="数值")
    error_bound: float = Field(..., ge=0, description="绝对误差估计：尾项渐近展开下一阶量级 ×10 加舍入量级，非严格上界")
    terms: int = Field(..., description="直接求和的项数")


# ============== L 值 ==============

class QuadratureConfig(BaseModel):
    """theta 积分路线的 Gauss-Legendre 分段求积配置"""
    model_config = ConfigDict(frozen=True)

    panels_per_unit: int = Field(default=4, ge=1, description="每单位 u 的分段数")
    nodes: int = Field(default=20, ge=4, description="每段节点数")
    crossover: float = Field(default=0.25, gt=0, description="直接 / 模变换求值分界点 u0")
    upper: float = Field(default=30.0, gt=0, description="积分上限 U")
    tolerance: float = Field(default=1e-9, gt=0, description="误差上限")

    @classmethod
    def from_settings(cls, settings: Settings) -> "QuadratureConfig":
        return cls(
            panels_per_unit=settings.quad_panels_per_unit,
            nodes=settings.quad_nodes,
            crossover=settings.quad_crossover,
            upper=settings.quad_upper,
            tolerance=settings.quad_tolerance,
        )


class LValueResult(BaseModel):
    """L(E_N, 2) 的一次计算结果"""
    curve: int = Field(..., description="导子 N")
    method: LValueMethod = Field(..., description="计算路线")
    value: float = Field(..., description="L(E_N, 2)")
    error_bound: float = Field(..., gt=0, description="绝对误差上界")
    terms_or_nodes: int = Field(..., description="级数项数或求积节点数")
    runtime_ms: float = Field(..., ge=0, description="耗时（毫秒）")


# ============== 检查报告 ==============

class CheckReport(BaseModel):
    """
    单项检查的报告

    JSON 字段顺序固定：name, lhs, rhs, abs_err, rel_err, tolerance, pass, runtime_ms,
    paper_location，之后是 status, detail, depends_on。
    """
    model_config = ConfigDict(populate_by_name=True)

    name: str
    lhs: float | str = Field(..., description="左边数值，精确检查为 'exact'")
    rhs: float | str = Field(..., description="右边数值，精确检查为 'exact'")
    abs_err: float = 0.0
    rel_err: float = 0.0
    tolerance: float = 0.0
    passed: bool = Field(..., alias="pass")
    runtime_ms: float = 0.0
    paper_location: str = ""
    status: CheckStatus = CheckStatus.PASS
    detail: str | None = None
    depends_on: list[str] = Field(default_factory=list)

    def to_row(self) -> dict:
        """按固定字段顺序导出（'pass' 使用别名）"""
        return self.model_dump(by_alias=True, mode="json")


class RegulatorConstants(BaseModel):
    """单条曲线的调节子系数链常数"""
    model_config = ConfigDict(frozen=True)

    conductor: int
    pair_plus: tuple[float, float] = Field(..., description="Delta F~ 的被减项参数")
    pair_minus: tuple[float, float] = Field(..., description="Delta F~ 的减项参数")
    delta_coefficient: float = Field(..., description="Delta F~ = delta_coefficient * L(E_N, 2)")
    reg_prefactor: float = Field(..., description="调节子表达式中乘在 Delta F~ 前的系数")
    final_coefficient: float = Field(..., description="最终定理中 L'(E_N, 0) Omega_R 的系数")
    real_period: RealPeriod


# ============== CLI 配置 ==============

class CliConfig(BaseModel):
    """CLI 解析后的运行配置"""
    subcommand: str
    order24: int = Field(default=4800, gt=0)
    tolerance: float | None = Field(default=None, gt=0, description="覆盖所有数值检查的容差")
    output: OutputMode = OutputMode.TABLE
    parallelism: int = Field(default=4, ge=1)
    seed: int | None = None

    @model_validator(mode="after")
    def validate_order(self) -> "CliConfig":
        if self.order24 % 24 != 0:
            raise ValueError(f"order24 必须是 24 的倍数: {self.order24}")
        return self

    def to_settings(self) -> Settings:
        return Settings(order24=self.order24, parallelism=self.parallelism, seed=self.seed)


# ============== 请求模型 ==============

class CheckRunRequest(BaseModel):
    """批量运行检查请求"""
    names: list[str] | None = Field(default=None, description="检查名列表（与 prefix 二选一）")
    prefix: str | None = Field(default=None, description="检查名前缀")
    order24: int | None = Field(default=None, gt=0, description="截断阶（q^{1/24} 单位）")
    tolerance: float | None = Field(default=None, gt=0, description="覆盖数值检查的容差")
    seed: int | None = Field(default=None, description="附加随机采样点的种子")

    @model_validator(mode="after")
    def validate_selector(self) -> "CheckRunRequest":
        if self.order24 is not None and self.order24 % 24 != 0:
            raise ValueError(f"order24 必须是 24 的倍数: {self.order24}")
        if self.names is not None and self.prefix is not None:
            raise ValueError("names 与 prefix 不能同时指定")
        return self


class QExpandRequest(BaseModel):
    """q 展开请求"""
    expr: str = Field(..., min_length=1, description="eta/theta 表达式")
    order: int = Field(default=240, ge=1, le=24 * 2000, description="截断阶（q^{1/24} 单位）")


class HypEvalRequest(BaseModel):
    """3F2(1) 求值请求"""
    params: HypParams


# ============== 响应模型 ==============

class CheckListData(BaseModel):
    """检查注册表条目"""
    name: str
    paper_location: str
    depends_on: list[str] = Field(default_factory=list)


class CheckListResponse(BaseModel):
    code: int = Field(default=0, description="响应码，0 表示成功")
    msg: str = Field(default="success", description="响应消息")
    data: list[CheckListData]


class CheckReportResponse(BaseModel):
    code: int = Field(default=0, description="响应码")
    msg: str = Field(default="success", description="响应消息")
    data: CheckReport


class CheckRunData(BaseModel):
    all_passed: bool
    reports: list[CheckReport]


class CheckRunResponse(BaseModel):
    code: int = Field(default=0, description="响应码")
    msg: str = Field(default="success", description="响应消息")
    data: CheckRunData


class LValueResponse(BaseModel):
    code: int = Field(default=0, description="响应码")
    msg: str = Field(default="success", description="响应消息")
    data: list[LValueResult]


class QExpandData(BaseModel):
    expr: str
    order: int
    rows: list[tuple[int, str]] = Field(..., description="[[指数分子, 'p/q'], ...]")


class QExpandResponse(BaseModel):
    code: int = Field(default=0, description="响应码")
    msg: str = Field(default="success", description="响应消息")
    data: QExpandData


class HypValueResponse(BaseModel):
    code: int = Field(default=0, description="响应码")
    msg: str = Field(default="success", description="响应消息")
    data: HypValue


class FtildeData(BaseModel):
    alpha: float
    beta: float
    definition: float
    dixon: float


class FtildeResponse(BaseModel):
    code: int = Field(default=0, description="响应码")
    msg: str = Field(default="success", description="响应消息")
    data: FtildeData


class ErrorResponse(BaseModel):
    """错误响应"""
    code: int = Field(..., description="错误码")
    msg: str = Field(..., description="错误消息")
    data: None = Field(default=None, description="无数据")
