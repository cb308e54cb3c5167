"""
领域模型

定义枚举与不可变值类型：
- NodeKind / ExprAst: eta/theta 表达式 DSL 的语法树
- RealPeriod: 实周期的精确符号标签
- CurveSpec: 导子 N 的曲线数据（尖点形式、根数、实周期、Weierstrass 方程）
- LValueMethod / CheckStatus / OutputMode: 结果与输出相关的枚举
"""

import math
from dataclasses import dataclass
from enum import Enum as PyEnum
from fractions import Fraction


# ============== 枚举类型 ==============

class NodeKind(str, PyEnum):
    """语法树节点类型"""
    ETA = "eta"
    THETA2 = "theta2"
    THETA3 = "theta3"
    THETA4 = "theta4"
    EISENSTEIN_L = "L"
    RATIONAL = "rational"
    MUL = "mul"
    DIV = "div"
    POW = "pow"
    ADD = "add"
    SUB = "sub"
    NEG = "neg"


# 函数名 -> 节点类型（DSL 中的标识符）
FUNCTION_KINDS: dict[str, NodeKind] = {
    "eta": NodeKind.ETA,
    "theta2": NodeKind.THETA2,
    "theta3": NodeKind.THETA3,
    "theta4": NodeKind.THETA4,
    "L": NodeKind.EISENSTEIN_L,
}

BINARY_KINDS = frozenset({NodeKind.MUL, NodeKind.DIV, NodeKind.ADD, NodeKind.SUB})


class RealPeriod(str, PyEnum):
    """实周期 Omega_R 的精确标签"""
    SQRT_2PI_OVER_SQRT3 = "sqrt(2*pi/sqrt(3))"
    SQRT_2PI = "sqrt(2*pi)"
    SQRT_PI = "sqrt(pi)"

    @property
    def numeric(self) -> float:
        match self:
            case RealPeriod.SQRT_2PI_OVER_SQRT3:
                return math.sqrt(2 * math.pi / math.sqrt(3))
            case RealPeriod.SQRT_2PI:
                return math.sqrt(2 * math.pi)
            case RealPeriod.SQRT_PI:
                return math.sqrt(math.pi)


class LValueMethod(str, PyEnum):
    """L(E, 2) 的计算路线"""
    SERIES = "series"
    THETA_INTEGRAL = "theta_integral"
    ELEMENTARY = "elementary"


class CheckStatus(str, PyEnum):
    """检查状态"""
    PASS = "pass"
    FAIL = "fail"
    NONPOSITIVE = "nonpositive"
    ERROR = "error"


class OutputMode(str, PyEnum):
    """CLI 输出模式"""
    TABLE = "table"
    JSON = "json"


# ============== 语法树 ==============

@dataclass(frozen=True)
class ExprAst:
    """
    DSL 语法树节点

    - ETA/THETA*/EISENSTEIN_L: multiplier 为 k（参数 q^k）
    - RATIONAL: value 为精确有理数
    - POW: exponent 为整数指数，args 为 (底数,)
    - MUL/DIV/ADD/SUB: args 为 (左, 右)；NEG: args 为 (操作数,)
    """
    kind: NodeKind
    multiplier: int | None = None
    exponent: int | None = None
    value: Fraction | None = None
    args: tuple["ExprAst", ...] = ()

    # 便捷构造
    @classmethod
    def func(cls, kind: NodeKind, k: int = 1) -> "ExprAst":
        return cls(kind, multiplier=k)

    @classmethod
    def eta(cls, k: int = 1) -> "ExprAst":
        return cls(NodeKind.ETA, multiplier=k)

    @classmethod
    def theta(cls, j: int, k: int = 1) -> "ExprAst":
        return cls(NodeKind(f"theta{j}"), multiplier=k)

    @classmethod
    def const(cls, value: Fraction | int) -> "ExprAst":
        return cls(NodeKind.RATIONAL, value=Fraction(value))

    @classmethod
    def binary(cls, kind: NodeKind, left: "ExprAst", right: "ExprAst") -> "ExprAst":
        return cls(kind, args=(left, right))

    @classmethod
    def power(cls, base: "ExprAst", exponent: int) -> "ExprAst":
        return cls(NodeKind.POW, exponent=exponent, args=(base,))

    @classmethod
    def neg(cls, operand: "ExprAst") -> "ExprAst":
        return cls(NodeKind.NEG, args=(operand,))

    def __mul__(self, other: "ExprAst") -> "ExprAst":
        return ExprAst.binary(NodeKind.MUL, self, other)

    def __truediv__(self, other: "ExprAst") -> "ExprAst":
        return ExprAst.binary(NodeKind.DIV, self, other)

    def __pow__(self, exponent: int) -> "ExprAst":
        return ExprAst.power(self, exponent)


# ============== 曲线 ==============

@dataclass(frozen=True)
class CurveSpec:
    """
    导子 N 的椭圆曲线 E_N: y^2 = x^3 + a4 x + a6

    cuspform 是对应权 2 新形式的 eta 商（语法树），root_number 为函数方程符号。
    """
    conductor: int
    cuspform_text: str
    cuspform: ExprAst
    root_number: int
    real_period: RealPeriod
    a4: Fraction
    a6: Fraction

    @property
    def omega_r(self) -> float:
        return self.real_period.numeric
