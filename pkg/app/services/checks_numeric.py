"""
数值引理检查（num_*）

固定采样点；settings.seed 给定时在每个检查的定义域内追加随机采样点。
"""

import logging
import math

import numpy as np

from app.infra import thetanum
from app.infra.specfun import beta, gamma, hyp2f1_half, nome_y, pochhammer
from app.schemas import CheckReport, QuadratureConfig
from app.services.checks_base import CheckContext, CheckSpec, Sample, numeric_report
from app.services.curves import get_curve
from app.services.lseries import lvalue2_elementary, lvalue2_theta_integral

logger = logging.getLogger(__name__)


# ============== theta 双重和 ==============

def seriescal1_double_sum(u: float) -> float:
    """
    sum_{k,s>=1} e^{-a(s-1/2)(k-1/2)} / (k-1/2)，a = pi/(4u)

    对 s 的几何级数先求和：e^{-a(k-1/2)/2} / (1 - e^{-a(k-1/2)})。
    """
    a = math.pi / (4 * u)
    k_max = int(90 / a) + 2
    h = np.arange(1, k_max + 1, dtype=np.float64) - 0.5
    inner = np.exp(-a * h / 2) / -np.expm1(-a * h)
    return math.fsum(inner / h)


def seriescal1_theta_side(u: float) -> float:
    """(1/2) log(theta3(q^8) / theta2(q^8))，q = e^{-2 pi u}"""
    lq8 = -16 * math.pi * u
    return 0.5 * float(thetanum.log_theta3(lq8) - thetanum.log_theta2(lq8))


def check_seriescal1(ctx: CheckContext) -> CheckReport:
    points = [0.1, 0.2, 0.4, *ctx.extra_samples(0.05, 0.5)]
    samples = [Sample(f"u={u:.6g}", seriescal1_double_sum(u), seriescal1_theta_side(u)) for u in points]
    return numeric_report("num_seriescal1", "where q = e^{-2 pi u}", samples, ctx.tol("tol_seriescal1"))


# ============== eta 对合 ==============

def fricke_form32(u: float) -> float:
    """eta^2(q^4) eta^2(q^8)，q = e^{-2 pi u}"""
    lq = -2 * math.pi * u
    return float(np.exp(2 * thetanum.log_eta(4 * lq) + 2 * thetanum.log_eta(8 * lq)))


def check_eta_involution(ctx: CheckContext) -> CheckReport:
    samples = []
    for t in [0.5, 0.8, 1.7, *ctx.extra_samples(0.4, 2.5)]:
        lhs = float(thetanum.eta(-2 * math.pi / t))
        rhs = math.sqrt(t) * float(thetanum.eta(-2 * math.pi * t))
        samples.append(Sample(f"eta(e^(-2pi/t)) at t={t:.6g}", lhs, rhs))
    # 权 2 形式在 Fricke 对合下不变：F(1/(32u)) = 32 u^2 F(u)
    for u in (0.12, 0.2):
        samples.append(Sample(f"Fricke u={u}", fricke_form32(1 / (32 * u)), 32 * u * u * fricke_form32(u)))
    return numeric_report(
        "num_eta_involution", "the involution for the eta function", samples, ctx.tol("tol_eta_involution")
    )


# ============== Ramanujan 参数化 ==============

def ramanujan_samples(x: float) -> list[Sample]:
    z = hyp2f1_half(x)
    lq = -nome_y(x)
    root = math.sqrt(z)
    w2 = math.sqrt(1 - x)
    w4 = (1 - x) ** 0.25
    pairs = [
        ("theta3(q)", thetanum.theta3(lq), root),
        ("theta2(q)", thetanum.theta2(lq), root * x**0.25),
        ("theta4(q)", thetanum.theta4(lq), root * w4),
        ("theta3^2(q^2)", thetanum.theta3(2 * lq) ** 2, z * (1 + w2) / 2),
        ("theta2^2(q^2)", thetanum.theta2(2 * lq) ** 2, z * (1 - w2) / 2),
        ("theta3(q^4)", thetanum.theta3(4 * lq), root * (1 + w4) / 2),
        ("theta2(q^4)", thetanum.theta2(4 * lq), root * (1 - w4) / 2),
    ]
    return [Sample(f"{label} at x={x:.6g}", float(lhs), rhs) for label, lhs, rhs in pairs]


def check_ramanujan_param(ctx: CheckContext) -> CheckReport:
    samples = []
    for x in [0.2, 0.5, 0.8, *ctx.extra_samples(0.1, 0.9)]:
        samples.extend(ramanujan_samples(x))
    return numeric_report("num_ramanujan_param", "It is also known", samples, ctx.tol("tol_ramanujan_param"))


def check_measure(ctx: CheckContext) -> CheckReport:
    """theta3^4(q) dq/q = dx/(x(1-x))：theta3^4(e^{-y}) (-y'(x)) = 1/(x(1-x))，y' 用五点中心差分"""
    x, h = 0.5, 1e-3
    dy = (-nome_y(x + 2 * h) + 8 * nome_y(x + h) - 8 * nome_y(x - h) + nome_y(x - 2 * h)) / (12 * h)
    lhs = float(thetanum.theta3(-nome_y(x))) ** 4 * -dy
    samples = [Sample(f"x={x}", lhs, 1 / (x * (1 - x)))]
    return numeric_report("num_measure", "theta3^4(q) dq/q = dx/(x(1-x))", samples, ctx.tol("tol_measure"))


# ============== 对数展开 ==============

def _power_index(w: float) -> np.ndarray:
    n_max = min(int(45 / -math.log(w)) + 2, 20000)
    return np.arange(1, n_max + 1, dtype=np.float64)


def log_expansion_32(x: float) -> tuple[float, float]:
    """log((1 - (1-x)^{1/2}) / x^{1/2}) = sum_n ((1-x)^n - 2(1-x)^{n/2}) / (2n)"""
    w = math.sqrt(1 - x)
    n = _power_index(w)
    series = math.fsum((w ** (2 * n) - 2 * w**n) / (2 * n))
    direct = 0.5 * math.log(x) - math.log1p(w)
    return series, direct


def log_expansion_64(x: float) -> tuple[float, float]:
    """log((1 + (1-x)^{1/4}) / (1 - (1-x)^{1/4})) = -2 sum_n ((1-x)^{n/2} - 2(1-x)^{n/4}) / (2n)"""
    w = (1 - x) ** 0.25
    n = _power_index(w)
    series = -2 * math.fsum((w ** (2 * n) - 2 * w**n) / (2 * n))
    direct = 2 * math.atanh(w)
    return series, direct


def check_log_expansion_32(ctx: CheckContext) -> CheckReport:
    samples = [Sample(f"x={x:.6g}", *log_expansion_32(x)) for x in [0.3, 0.6, 0.9, *ctx.extra_samples(0.2, 0.95)]]
    return numeric_report("num_log_expansion_32", "If we use the formula", samples, ctx.tol("tol_log_expansion"))


def check_log_expansion_64(ctx: CheckContext) -> CheckReport:
    samples = [Sample(f"x={x:.6g}", *log_expansion_64(x)) for x in [0.3, 0.6, 0.9, *ctx.extra_samples(0.2, 0.95)]]
    return numeric_report(
        "num_log_expansion_64", "If we use the following formula", samples, ctx.tol("tol_log_expansion")
    )


# ============== Beta 约化表 ==============

def beta_table_samples(n: int) -> list[Sample]:
    """n 处的 Beta 约化；奇偶决定 B(., n/2) 走哪一行"""
    g14, g34, g12 = gamma(0.25), gamma(0.75), gamma(0.5)
    rows = [
        ("B(1/4,n)", beta(0.25, n), gamma(n) / pochhammer(0.25, n)),
        ("B(3/4,n)", beta(0.75, n), gamma(n) / pochhammer(0.75, n)),
    ]
    if n % 2 == 0:
        m = n // 2
        rows += [
            ("B(1/4,m) even", beta(0.25, m), gamma(m) / pochhammer(0.25, m)),
            ("B(3/4,m) even", beta(0.75, m), gamma(m) / pochhammer(0.75, m)),
        ]
    else:
        m = (n - 1) // 2
        rows += [
            ("B(1/4,m+1/2) odd", beta(0.25, m + 0.5), g14 * g12 * pochhammer(0.5, m) / (g34 * pochhammer(0.75, m))),
            ("B(3/4,m+1/2) odd", beta(0.75, m + 0.5), 4 * g34 * g12 * pochhammer(0.5, m) / (g14 * pochhammer(1.25, m))),
        ]
    # m 项改写为 3F2 项：1/(2m+1) = (1/2)_m / (3/2)_m
    m = n - 1
    for den, label in ((0.75, "3/4"), (1.25, "5/4")):
        lhs = pochhammer(0.5, m) / ((2 * m + 1) * pochhammer(den, m))
        rhs = pochhammer(0.5, m) ** 2 * pochhammer(1, m) / (pochhammer(1.5, m) * pochhammer(den, m) * math.factorial(m))
        rows.append((f"3F2 term [1/2,1/2,1;3/2,{label}] m={m}", lhs, rhs))
    return [Sample(f"{label} n={n}", lhs, rhs) for label, lhs, rhs in rows]


def check_beta_table(ctx: CheckContext) -> CheckReport:
    samples = [s for n in range(1, 7) for s in beta_table_samples(n)]
    return numeric_report("num_beta_table", "are represented as follows", samples, ctx.tol("tol_beta_table"))


# ============== x 积分与 theta 积分 ==============

def check_elementary_integrals(ctx: CheckContext) -> CheckReport:
    quad = QuadratureConfig.from_settings(ctx.settings)
    samples = []
    for conductor in (32, 64):
        curve = get_curve(conductor)
        elementary = lvalue2_elementary(curve, ctx.settings.quad_tolerance)
        theta_route = lvalue2_theta_integral(curve, quad)
        samples.append(Sample(f"N={conductor}", elementary.value, theta_route.value))
    return numeric_report("num_elementary_integrals", "Set q = e^{-y(x)}", samples, ctx.tol("tol_elementary"))


CHECKS: list[CheckSpec] = [
    CheckSpec("num_seriescal1", "where q = e^{-2 pi u}", check_seriescal1),
    CheckSpec("num_eta_involution", "the involution for the eta function", check_eta_involution),
    CheckSpec("num_ramanujan_param", "It is also known", check_ramanujan_param),
    CheckSpec("num_measure", "theta3^4(q) dq/q = dx/(x(1-x))", check_measure),
    CheckSpec("num_log_expansion_32", "If we use the formula", check_log_expansion_32),
    CheckSpec("num_log_expansion_64", "If we use the following formula", check_log_expansion_64),
    CheckSpec("num_beta_table", "are represented as follows", check_beta_table),
    CheckSpec("num_elementary_integrals", "Set q = e^{-y(x)}", check_elementary_integrals),
]
