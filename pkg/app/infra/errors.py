"""
验证引擎错误定义

实现：
- 错误码枚举
- 错误基类（携带错误码，统一字符串格式）
- 各模块的具体异常（表达式语法、级数不可逆、定义域、发散、求积失败、未知检查）
"""

from enum import Enum


class VerifyErrorCode(str, Enum):
    """错误码"""

    EXPR_SYNTAX = "expr_syntax_error"
    INVALID_MULTIPLIER = "invalid_multiplier"
    NON_INVERTIBLE = "non_invertible_series"
    TRUNCATION = "insufficient_truncation"
    DOMAIN = "domain_error"
    DIVERGENT = "divergent_series"
    QUADRATURE = "quadrature_failed"
    UNKNOWN_CHECK = "unknown_check"
    UNKNOWN_CURVE = "unknown_curve"


class VerifyError(Exception):
    """验证引擎错误基类"""

    def __init__(self, message: str, error_code: VerifyErrorCode):
        super().__init__(message)
        self.message = message
        self.error_code = error_code

    def __str__(self) -> str:
        return f"[{self.error_code.value}] {self.message}"


class ExprSyntaxError(VerifyError):
    """DSL 语法错误（携带字节偏移）"""

    def __init__(self, message: str, offset: int):
        super().__init__(
            message=f"{message} (offset {offset})",
            error_code=VerifyErrorCode.EXPR_SYNTAX,
        )
        self.offset = offset


class InvalidMultiplierError(VerifyError):
    """乘子 k 必须 >= 1"""

    def __init__(self, multiplier: int, offset: int | None = None):
        where = f" (offset {offset})" if offset is not None else ""
        super().__init__(
            message=f"multiplier must be >= 1, got {multiplier}{where}",
            error_code=VerifyErrorCode.INVALID_MULTIPLIER,
        )
        self.multiplier = multiplier
        self.offset = offset


class NonInvertibleSeriesError(VerifyError):
    """级数在当前截断下不可逆（最低阶系数为零或级数为零）"""

    def __init__(self, message: str = "series has no invertible leading coefficient"):
        super().__init__(message=message, error_code=VerifyErrorCode.NON_INVERTIBLE)


class TruncationError(VerifyError):
    """截断阶不足"""

    def __init__(self, message: str):
        super().__init__(message=message, error_code=VerifyErrorCode.TRUNCATION)


class DomainError(VerifyError):
    """参数超出函数定义域（含 Gamma 极点）"""

    def __init__(self, message: str):
        super().__init__(message=message, error_code=VerifyErrorCode.DOMAIN)


class DivergentSeriesError(VerifyError):
    """3F2(1) 收敛裕量 s <= 0"""

    def __init__(self, s: float):
        super().__init__(
            message=f"3F2 at unit argument diverges: s = {s} <= 0",
            error_code=VerifyErrorCode.DIVERGENT,
        )
        self.s = s


class QuadratureError(VerifyError):
    """求积未达到容差"""

    def __init__(self, error_bound: float, tolerance: float):
        super().__init__(
            message=f"quadrature error bound {error_bound:.3e} exceeds tolerance {tolerance:.3e}",
            error_code=VerifyErrorCode.QUADRATURE,
        )
        self.error_bound = error_bound
        self.tolerance = tolerance


class UnknownCheckError(VerifyError):
    """检查名不在注册表中"""

    def __init__(self, name: str):
        super().__init__(message=f"unknown check: {name}", error_code=VerifyErrorCode.UNKNOWN_CHECK)
        self.name = name


class UnknownCurveError(VerifyError):
    """导子不在 {27, 32, 64} 中"""

    def __init__(self, conductor: int):
        super().__init__(
            message=f"unsupported conductor: {conductor} (expected 27, 32 or 64)",
            error_code=VerifyErrorCode.UNKNOWN_CURVE,
        )
        self.conductor = conductor
