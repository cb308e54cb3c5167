"""
精确截断 q 级数内核

级数的指数统一放在 q^{1/24} 格点上（指数分子 n 表示 q^{n/24}），系数为 Fraction。
提供 eta / theta / Eisenstein L / Lambert 级数构造器、截断算术与恒等式比较。

截断约定：order24 是绝对精度，所有指数分子 <= order24 的系数都是精确的。
倒数运算允许出现负指数分子（Laurent 前缀），只作为中间结果出现。
"""

import logging
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from types import MappingProxyType

from app.infra.errors import (
    DomainError,
    InvalidMultiplierError,
    NonInvertibleSeriesError,
    TruncationError,
)
from app.infra.specfun import chi4

logger = logging.getLogger(__name__)

Number = int | Fraction


def _lean(c: Fraction) -> Number:
    """整数系数退化为 int，加速内层循环"""
    return c.numerator if c.denominator == 1 else c


@dataclass(frozen=True, eq=True)
class FormalSeries:
    """
    q^{1/24} 格点上的精确截断级数

    Attributes:
        order24: 绝对精度（指数分子上界，含）
        coeffs: 指数分子 -> 非零有理系数（只读映射）
    """

    order24: int
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {
            e: Fraction(c)
            for e, c in self.coeffs.items()
            if c != 0 and e <= self.order24
        }
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(clean.items()))))

    __hash__ = None  # type: ignore[assignment]

    # ============== 构造辅助 ==============

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Number]], order24: int) -> "FormalSeries":
        """累加 (指数分子, 系数) 项，超出 order24 的项丢弃"""
        acc: dict[int, Number] = defaultdict(int)
        for e, c in terms:
            if e <= order24:
                acc[e] += c
        return cls(order24, acc)

    @classmethod
    def constant(cls, value: Number, order24: int) -> "FormalSeries":
        return cls(order24, {0: Fraction(value)})

    @classmethod
    def zero(cls, order24: int) -> "FormalSeries":
        return cls(order24, {})

    # ============== 查询 ==============

    def coefficient(self, exponent24: int) -> Fraction:
        """读取指数分子处的系数（超出精度时抛出 TruncationError）"""
        if exponent24 > self.order24:
            raise TruncationError(
                f"coefficient at numerator {exponent24} requested, series known through {self.order24}"
            )
        return self.coeffs.get(exponent24, Fraction(0))

    @property
    def valuation(self) -> int:
        """最低非零指数分子；零级数返回 order24 + 1"""
        if not self.coeffs:
            return self.order24 + 1
        return next(iter(self.coeffs))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def truncate(self, order24: int) -> "FormalSeries":
        if order24 > self.order24:
            raise TruncationError(f"cannot raise precision from {self.order24} to {order24}")
        return FormalSeries(order24, self.coeffs)

    def to_json_rows(self) -> list[list[int | str]]:
        """导出为 [[指数分子, "p/q"], ...]，指数升序"""
        return [[e, str(c)] for e, c in self.coeffs.items()]

    # ============== 算术 ==============

    def scale(self, factor: Number) -> "FormalSeries":
        factor = Fraction(factor)
        return FormalSeries(self.order24, {e: c * factor for e, c in self.coeffs.items()})

    def __neg__(self) -> "FormalSeries":
        return self.scale(-1)

    def __add__(self, other: "FormalSeries | Number") -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            other = FormalSeries.constant(other, self.order24)
        order = min(self.order24, other.order24)
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for e, c in self.coeffs.items():
            acc[e] += c
        for e, c in other.coeffs.items():
            acc[e] += c
        return FormalSeries(order, acc)

    __radd__ = __add__

    def __sub__(self, other: "FormalSeries | Number") -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            other = FormalSeries.constant(other, self.order24)
        return self + (-other)

    def __rsub__(self, other: Number) -> "FormalSeries":
        return FormalSeries.constant(other, self.order24) - self

    def __mul__(self, other: "FormalSeries | Number") -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            return self.scale(other)
        order = min(
            self.order24,
            other.order24,
            self.order24 + other.valuation,
            other.order24 + self.valuation,
        )
        left = [(e, _lean(c)) for e, c in self.coeffs.items()]
        right = [(e, _lean(c)) for e, c in other.coeffs.items()]
        if len(left) > len(right):
            left, right = right, left
        acc: dict[int, Number] = defaultdict(int)
        right_min = right[0][0] if right else 0
        for ea, ca in left:
            if ea + right_min > order:
                break
            for eb, cb in right:
                e = ea + eb
                if e > order:
                    break
                acc[e] += ca * cb
        return FormalSeries(order, acc)

    __rmul__ = __mul__

    def reciprocal(self) -> "FormalSeries":
        """
        倒数（逐项递推求解）

        设 self = c_v q^{v/24} u(q)，u 的常数项为 1，则 1/self = q^{-v/24} / (c_v u)。
        u 的精度为 order24 - v，结果精度为 order24 - 2v。

        Raises:
            NonInvertibleSeriesError: 级数在当前精度下为零
        """
        if not self.coeffs:
            raise NonInvertibleSeriesError(
                f"series is zero through numerator {self.order24}; no invertible leading coefficient"
            )
        v = self.valuation
        unit_order = self.order24 - v
        shifted = {e - v: c for e, c in self.coeffs.items()}
        step = 0
        for e in shifted:
            step = gcd(step, e)
        step = step or 24
        n_steps = unit_order // step
        unit = [(e // step, _lean(c)) for e, c in shifted.items() if 0 < e <= n_steps * step]
        inv_lead = 1 / shifted[0]
        out: list[Number] = [inv_lead] + [0] * n_steps
        for m in range(1, n_steps + 1):
            acc: Number = 0
            for i, ui in unit:
                if i > m:
                    break
                acc += ui * out[m - i]
            out[m] = -acc * inv_lead
        return FormalSeries(
            self.order24 - 2 * v,
            {m * step - v: c for m, c in enumerate(out) if c != 0},
        )

    def __truediv__(self, other: "FormalSeries | Number") -> "FormalSeries":
        if not isinstance(other, FormalSeries):
            if other == 0:
                raise NonInvertibleSeriesError("division by the zero constant")
            return self.scale(Fraction(1) / Fraction(other))
        return self * other.reciprocal()

    def __pow__(self, exponent: int) -> "FormalSeries":
        if exponent == 0:
            return FormalSeries.constant(1, self.order24)
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result: FormalSeries | None = None
        base = self
        while exponent:
            if exponent & 1:
                result = base if result is None else result * base
            exponent >>= 1
            if exponent:
                base = base * base
        assert result is not None
        return result

    def substitute_power(self, m: int) -> "FormalSeries":
        """q -> q^m"""
        if m < 1:
            raise DomainError(f"substitution power must be >= 1, got {m}")
        return FormalSeries(self.order24 * m, {e * m: c for e, c in self.coeffs.items()})


# ============== 函数式接口 ==============


def series_add(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a + b


def series_sub(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a - b


def series_mul(a: FormalSeries, b: FormalSeries) -> FormalSeries:
    return a * b


def series_scale(a: FormalSeries, factor: Number) -> FormalSeries:
    return a.scale(factor)


def series_pow(a: FormalSeries, exponent: int) -> FormalSeries:
    return a**exponent


# ============== 构造器 ==============


def _check_multiplier(k: int) -> None:
    if k < 1:
        raise InvalidMultiplierError(k)


def euler_product(k: int, order24: int) -> FormalSeries:
    """
    prod_{n>=1} (1 - q^{kn})，由五边形数定理展开

    sum_{j in Z} (-1)^j q^{k j(3j-1)/2}
    """
    _check_multiplier(k)
    terms: list[tuple[int, int]] = []
    j = 0
    while True:
        added = False
        for jj in ((j, -j) if j else (0,)):
            e = 24 * k * (jj * (3 * jj - 1) // 2)
            if e <= order24:
                terms.append((e, -1 if jj % 2 else 1))
                added = True
        if not added:
            break
        j += 1
    return FormalSeries.from_terms(terms, order24)


def eta(k: int, order24: int) -> FormalSeries:
    """
    Dedekind eta：eta(q^k) = q^{k/24} prod_{n>=1} (1 - q^{kn})

    Args:
        k: 乘子（>= 1）
        order24: 截断阶（q^{1/24} 单位）

    Returns:
        FormalSeries: 截断后的 eta(q^k)
    """
    _check_multiplier(k)
    body = euler_product(k, max(order24 - k, 0))
    return FormalSeries(order24, {e + k: c for e, c in body.coeffs.items()})


def theta(j: int, k: int, order24: int) -> FormalSeries:
    """
    Jacobi theta 常数 theta_j(q^k)

    theta2 = sum q^{k(n+1/2)^2}，theta3 = sum q^{k n^2}，theta4 = sum (-1)^n q^{k n^2}（n 取遍 Z）
    """
    _check_multiplier(k)
    terms: list[tuple[int, int]] = []
    if j == 2:
        n = 0
        while 6 * k * (2 * n + 1) ** 2 <= order24:
            terms.append((6 * k * (2 * n + 1) ** 2, 2))
            n += 1
    elif j in (3, 4):
        terms.append((0, 1))
        n = 1
        while 24 * k * n * n <= order24:
            sign = -1 if (j == 4 and n % 2) else 1
            terms.append((24 * k * n * n, 2 * sign))
            n += 1
    else:
        raise DomainError(f"theta index must be 2, 3 or 4, got {j}")
    return FormalSeries.from_terms(terms, order24)


def divisor_sigma1(limit: int) -> list[int]:
    """sigma_1(n)，n = 0..limit（筛法）"""
    sigma = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            sigma[m] += d
    return sigma


def eisenstein_L(order24: int, k: int = 1) -> FormalSeries:
    """
    L(q^k) = 1 - 24 sum_{n>=1} sigma_1(n) q^{kn}

    Raises:
        DomainError: order24 不是 24 的倍数
    """
    _check_multiplier(k)
    if order24 % 24:
        raise DomainError(f"order24 must be a multiple of 24, got {order24}")
    limit = order24 // (24 * k)
    sigma = divisor_sigma1(limit)
    terms = [(0, 1)] + [(24 * k * n, -24 * sigma[n]) for n in range(1, limit + 1)]
    return FormalSeries.from_terms(terms, order24)


def lambert_theta2sq(order24: int) -> FormalSeries:
    """
    theta2^2(q) 的 Lambert 形式：4 sum_{n,k>=1} chi_{-4}(n) q^{n(k-1/2)}

    指数分子为 12 n (2k - 1)；支撑由 n(k - 1/2) <= order24/24 精确截断。
    """
    if order24 % 12:
        raise DomainError(f"order24 must be a multiple of 12, got {order24}")
    terms: list[tuple[int, int]] = []
    n = 1
    while 12 * n <= order24:
        ch = chi4(n)
        if ch:
            odd = 1
            while 12 * n * odd <= order24:
                terms.append((12 * n * odd, 4 * ch))
                odd += 2
        n += 1
    return FormalSeries.from_terms(terms, order24)


def theta3sq_lambert(order24: int) -> FormalSeries:
    """theta3^2(q) = 1 + 4 sum_{n>=1} q^n / (1 + q^{2n}) = 1 + 4 sum_{n>=1, j>=0} (-1)^j q^{n(2j+1)}"""
    limit = order24 // 24
    terms: list[tuple[int, int]] = [(0, 1)]
    for n in range(1, limit + 1):
        j = 0
        while n * (2 * j + 1) <= limit:
            terms.append((24 * n * (2 * j + 1), -4 if j % 2 else 4))
            j += 1
    return FormalSeries.from_terms(terms, order24)


def eta_triple_product_sum(order24: int) -> FormalSeries:
    """sum_{n>=0} (-1)^n (2n+1) q^{(2n+1)^2}，即 eta^3(q^8) 的三重积展开"""
    terms: list[tuple[int, int]] = []
    n = 0
    while 24 * (2 * n + 1) ** 2 <= order24:
        terms.append((24 * (2 * n + 1) ** 2, (-1) ** n * (2 * n + 1)))
        n += 1
    return FormalSeries.from_terms(terms, order24)


def chi_series_lemma_lhs(order24: int) -> FormalSeries:
    """sum_{n,r>=1} r chi_{-4}(nr) q^{nr}（直接双重循环）"""
    if order24 % 24:
        raise DomainError(f"order24 must be a multiple of 24, got {order24}")
    limit = order24 // 24
    terms: list[tuple[int, int]] = []
    for n in range(1, limit + 1):
        for r in range(1, limit // n + 1):
            ch = chi4(n * r)
            if ch:
                terms.append((24 * n * r, r * ch))
    return FormalSeries.from_terms(terms, order24)


def chi_series_lemma_rhs(order24: int) -> FormalSeries:
    """(1/2) theta2(q^4) theta3(q^4) (theta3^2(q^4) - theta2^2(q^4))"""
    t2 = theta(2, 4, order24)
    t3 = theta(3, 4, order24)
    return (t2 * t3 * (t3 * t3 - t2 * t2)).scale(Fraction(1, 2))


def twist_i(series: FormalSeries) -> tuple[FormalSeries, FormalSeries]:
    """
    代换 q -> iq，返回 (实部, 虚部) 两个实系数级数

    Raises:
        DomainError: 级数含非整数次幂
    """
    re: dict[int, Fraction] = {}
    im: dict[int, Fraction] = {}
    for e, c in series.coeffs.items():
        if e % 24:
            raise DomainError(f"q -> iq needs integer exponents, found numerator {e}")
        match (e // 24) % 4:
            case 0:
                re[e] = c
            case 1:
                im[e] = c
            case 2:
                re[e] = -c
            case 3:
                im[e] = -c
    return FormalSeries(series.order24, re), FormalSeries(series.order24, im)


def identity_equal(
    a: FormalSeries,
    b: FormalSeries,
    through24: int,
) -> tuple[bool, int | None]:
    """
    逐系数精确比较，直到指数分子 through24（含）

    Returns:
        (是否相等, 第一个不一致的指数分子或 None)

    Raises:
        TruncationError: 任一级数精度不足 through24
    """
    if a.order24 < through24 or b.order24 < through24:
        raise TruncationError(
            f"identity check through {through24} needs both series known that far "
            f"(got {a.order24} and {b.order24})"
        )
    exponents = sorted(
        {e for e in a.coeffs if e <= through24} | {e for e in b.coeffs if e <= through24}
    )
    for e in exponents:
        if a.coeffs.get(e, 0) != b.coeffs.get(e, 0):
            logger.debug(f"identity mismatch at numerator {e}: {a.coeffs.get(e, 0)} != {b.coeffs.get(e, 0)}")
            return False, e
    return True, None


def direct_eta_product(k: int, order24: int) -> FormalSeries:
    """eta(q^k) 的逐因子展开（独立于五边形数定理，用作交叉验证）"""
    _check_multiplier(k)
    limit = max(order24 - k, 0) // (24 * k)
    poly = [0] * (limit + 1)
    poly[0] = 1
    for n in range(1, limit + 1):
        for i in range(limit, n - 1, -1):
            poly[i] -= poly[i - n]
    return FormalSeries(order24, {24 * k * i + k: c for i, c in enumerate(poly) if c})

