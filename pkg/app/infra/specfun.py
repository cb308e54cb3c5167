"""
浮点特殊函数

- Gamma / lnGamma / Beta / Pochhammer（scipy.special）
- chi_{-4}
- 2F1(1/2, 1/2; 1; x) 与 Ramanujan 参数化的 nome y(x)
- 3F2 在单位自变量处：编译内核直接求和 + 渐近尾项（Hurwitz zeta 解析求和）
- Thomae 变换、F~(alpha, beta) 的定义式与 Dixon 式两条路线
- 指数积分 E1 与 Gamma(2, x)
"""

import logging
import math
import sys

import numpy as np
from scipy import special

from app.config import get_settings
from app.infra.errors import DivergentSeriesError, DomainError
from app.infra.kernels import hyp3f2_partial_sum
from app.schemas import FtildeParams, HypParams, HypValue

logger = logging.getLogger(__name__)

EPS = sys.float_info.epsilon

DEFAULT_WINDOW = (0.05, 0.95)


# ============== Gamma 族 ==============

def gamma(x: float) -> float:
    """Gamma(x)，x > 0"""
    if not x > 0:
        raise DomainError(f"gamma needs x > 0, got {x}")
    return float(special.gamma(x))


def ln_gamma(x: float) -> float:
    """log Gamma(x)，x > 0"""
    if not x > 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x}")
    return float(special.gammaln(x))


def pochhammer(a: float, n: int) -> float:
    """
    升阶乘 (a)_n = a (a+1) ... (a+n-1)

    含零因子时精确返回 0。
    """
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    if n == 0:
        return 1.0
    if a <= 0 and a == math.floor(a) and -a < n:
        return 0.0
    return float(special.poch(a, n))


def beta(alpha: float, beta_: float) -> float:
    """B(alpha, beta) = Gamma(alpha) Gamma(beta) / Gamma(alpha + beta)"""
    if not (alpha > 0 and beta_ > 0):
        raise DomainError(f"beta needs positive arguments, got ({alpha}, {beta_})")
    return float(special.beta(alpha, beta_))


def chi4(n: int) -> int:
    """chi_{-4}(n) = Im(i^n)"""
    if n < 1:
        raise DomainError(f"chi4 needs n >= 1, got {n}")
    match n % 4:
        case 1:
            return 1
        case 3:
            return -1
        case _:
            return 0


# ============== 2F1 与 nome ==============

def hyp2f1_half(x: float, window: tuple[float, float] = DEFAULT_WINDOW) -> float:
    """
    z(x) = 2F1(1/2, 1/2; 1; x)

    Args:
        x: 自变量
        window: 允许的闭区间（默认 [0.05, 0.95]，右端必须 < 1）

    Raises:
        DomainError: x 不在窗口内
    """
    lo, hi = window
    if not (0.0 <= lo <= hi < 1.0):
        raise DomainError(f"invalid window {window}")
    if not lo <= x <= hi:
        raise DomainError(f"hyp2f1_half needs x in [{lo}, {hi}], got {x}")
    return float(special.hyp2f1(0.5, 0.5, 1.0, x))


def nome_y(x: float, window: tuple[float, float] = DEFAULT_WINDOW) -> float:
    """y(x) = pi z(1-x) / z(x)；q = e^{-y(x)}"""
    return math.pi * hyp2f1_half(1.0 - x, window) / hyp2f1_half(x, window)


# ============== 3F2(1) ==============

def _check_denominators(p: HypParams) -> None:
    for name, v in (("e", p.e), ("f", p.f)):
        if v <= 0 and v == math.floor(v):
            raise DomainError(f"3F2 denominator parameter {name} = {v} is a non-positive integer")


def _leading_constant(p: HypParams) -> float:
    """t_n ~ C n^{-1-s}，C = Gamma(e)Gamma(f) / (Gamma(a)Gamma(b)Gamma(c))；级数截断时为 0"""
    return float(
        special.gamma(p.e) * special.gamma(p.f)
        * special.rgamma(p.a) * special.rgamma(p.b) * special.rgamma(p.c)
    )


def _asymptotic_corrections(p: HypParams) -> tuple[float, float, float]:
    """
    t_n = C n^{-1-s} (1 + k1/n + k2/n^2 + k3/n^3 + ...)

    log[Gamma(n+x)/(Gamma(n) n^x)] = x(x-1)/(2n) - x(x-1)(2x-1)/(12n^2) + x^2(x-1)^2/(12n^3) + ...
    """
    num = (p.a, p.b, p.c)
    den = (p.e, p.f)

    def moment(g) -> float:
        return sum(g(x) for x in num) - sum(g(x) for x in den)

    l1 = moment(lambda x: x * (x - 1) / 2)
    l2 = moment(lambda x: -x * (x - 1) * (2 * x - 1) / 12)
    l3 = moment(lambda x: x * x * (x - 1) ** 2 / 12)
    k1 = l1
    k2 = l2 + l1 * l1 / 2
    k3 = l3 + l1 * l2 + l1**3 / 6
    return k1, k2, k3


def hyp3f2_unit(p: HypParams, terms: int | None = None) -> HypValue:
    """
    3F2[a, b, c; e, f | 1]

    直接求和前 terms 项（默认 settings.hyp_terms），其余用渐近展开逐项对 Hurwitz zeta 求和。
    参数先排序，分子 / 分母参数的任意置换得到逐位相同的结果。

    Returns:
        HypValue: value 与绝对误差估计（非严格上界）

    Raises:
        DivergentSeriesError: s <= 0
        DomainError: e 或 f 为非正整数
    """
    n_terms = terms or get_settings().hyp_terms
    s = p.s
    if s <= 0:
        raise DivergentSeriesError(s)
    _check_denominators(p)
    q = p.canonical()

    partial, last, weighted = hyp3f2_partial_sum(q.a, q.b, q.c, q.e, q.f, n_terms)
    if last == 0.0:
        # 分子含非正整数，级数已终止
        return HypValue(value=partial, error_bound=4 * EPS * weighted + EPS * abs(partial), terms=n_terms)

    lead = _leading_constant(q)
    k1, k2, k3 = _asymptotic_corrections(q)
    start = float(n_terms)
    z = [float(special.zeta(1.0 + s + j, start)) for j in range(4)]
    tail = lead * (z[0] + k1 * z[1] + k2 * z[2] + k3 * z[3])

    # 渐近展开的截断误差按下一阶量级估计；累乘舍入每步 <= 10 eps
    truncation = abs(lead) * (abs(k3) + abs(k2) + 1.0) * float(special.zeta(5.0 + s, start)) * 10
    rounding = 10 * EPS * weighted + 4 * EPS * abs(partial) + 8 * EPS * abs(tail)
    logger.debug(
        f"3F2{q.as_tuple()} partial={partial!r} tail={tail!r} truncation={truncation:.3e} rounding={rounding:.3e}"
    )
    return HypValue(value=partial + tail, error_bound=truncation + rounding, terms=n_terms)


def hyp3f2_oracle(p: HypParams, terms: int = 10_000_000, chunk: int = 1_000_000) -> float:
    """
    3F2(1) 的独立参照值

    numpy 分块累乘 + math.fsum 精确求和；尾项常数由两个采样点拟合 t_n n^{1+s} = C (1 + d/n)，
    不使用 Gamma 函数。
    """
    s = p.s
    if s <= 0:
        raise DivergentSeriesError(s)
    _check_denominators(p)
    a, b, c, e, f = p.as_tuple()
    n_hi = terms - 1
    n_lo = n_hi // 2
    samples: dict[int, float] = {}
    pieces = [1.0]
    last = 1.0
    start = 0
    while start < n_hi:
        stop = min(start + chunk, n_hi)
        n = np.arange(start, stop, dtype=np.float64)
        block = last * np.cumprod((a + n) * (b + n) * (c + n) / ((e + n) * (f + n) * (n + 1.0)))
        pieces.append(math.fsum(block))
        for idx in (n_lo, n_hi):
            if start < idx <= stop:
                samples[idx] = float(block[idx - start - 1])
        last = float(block[-1])
        start = stop

    y_hi = samples[n_hi] * n_hi ** (1.0 + s)
    y_lo = samples[n_lo] * n_lo ** (1.0 + s)
    cd = (y_lo - y_hi) / (1.0 / n_lo - 1.0 / n_hi)
    c_fit = y_hi - cd / n_hi
    tail = c_fit * float(special.zeta(1.0 + s, float(terms))) + cd * float(special.zeta(2.0 + s, float(terms)))
    return math.fsum(pieces) + tail


def thomae(p: HypParams) -> tuple[HypParams, float]:
    """
    Thomae 变换

    3F2[a,b,c; e,f | 1] = Gamma(e)Gamma(f)Gamma(s) / (Gamma(a)Gamma(b+s)Gamma(c+s))
                          * 3F2[e-a, f-a, s; s+c, s+b | 1]

    新参数组的收敛裕量等于 a。

    Raises:
        DomainError: 任一 Gamma 自变量非正
    """
    s = p.s
    args = {"e": p.e, "f": p.f, "s": s, "a": p.a, "b+s": p.b + s, "c+s": p.c + s}
    bad = [name for name, v in args.items() if not v > 0]
    if bad:
        raise DomainError(f"thomae transformation hits a gamma pole / non-positive argument: {', '.join(bad)}")
    log_prefactor = (
        special.gammaln(p.e) + special.gammaln(p.f) + special.gammaln(s)
        - special.gammaln(p.a) - special.gammaln(p.b + s) - special.gammaln(p.c + s)
    )
    transformed = HypParams(a=p.e - p.a, b=p.f - p.a, c=s, e=s + p.c, f=s + p.b)
    return transformed, float(np.exp(log_prefactor))


# ============== F~(alpha, beta) ==============

def ftilde(q: FtildeParams, terms: int | None = None) -> float:
    """
    F~(alpha, beta) = (Gamma(alpha)Gamma(beta)/Gamma(alpha+beta))^2
                      * 3F2[alpha, beta, alpha+beta-1; alpha+beta, alpha+beta | 1]
    """
    al, be = q.alpha, q.beta
    inner = hyp3f2_unit(HypParams(a=al, b=be, c=al + be - 1, e=al + be, f=al + be), terms)
    return beta(al, be) ** 2 * inner.value


def ftilde_via_dixon(q: FtildeParams, terms: int | None = None) -> float:
    """F~(alpha, beta) = Gamma(alpha)Gamma(beta) / (beta Gamma(alpha+beta)) * 3F2[beta, beta, 1; alpha+beta, beta+1 | 1]"""
    al, be = q.alpha, q.beta
    inner = hyp3f2_unit(HypParams(a=be, b=be, c=1.0, e=al + be, f=be + 1), terms)
    return beta(al, be) / be * inner.value


# ============== 指数积分 ==============

def exp_integral_E1(x: float) -> float:
    """E1(x) = int_x^inf e^{-t}/t dt，x > 0"""
    if not x > 0:
        raise DomainError(f"E1 needs x > 0, got {x}")
    return float(special.exp1(x))


def upper_gamma2(x: float) -> float:
    """Gamma(2, x) = (1 + x) e^{-x}，x >= 0"""
    if x < 0:
        raise DomainError(f"upper_gamma2 needs x >= 0, got {x}")
    return (1.0 + x) * math.exp(-x)
