"""
L(E_N, 2) 的数值路线

- series: 近似函数方程（在 Fricke 自对偶点 t = 1/sqrt(N) 处分裂）
- theta_integral: q = e^{-2 pi u} 代换后的 theta 积分，小 u 处用 Jacobi 虚变换
- elementary: Ramanujan 参数化后化为 [0, 1] 上的初等积分（scipy.integrate.quad）

以及由函数方程得到的 L'(E_N, 0)。
"""

import logging
import math
import sys
import time

import numpy as np
from numpy.typing import NDArray
from scipy import integrate, special

from app.config import Settings, get_settings
from app.infra import thetanum
from app.infra.errors import DomainError, QuadratureError, TruncationError
from app.models import CurveSpec, LValueMethod
from app.schemas import LValueResult, QuadratureConfig
from app.services.curves import cuspform_coeffs

logger = logging.getLogger(__name__)

EPS = sys.float_info.epsilon

# q^m 中的 m：log(theta3(q^m) / theta2(q^m))
_LOG_FACTOR_POWER = {32: 2, 64: 4}
# L = prefactor * int_0^inf G(u) du
_INTEGRAL_PREFACTOR = {32: math.pi**2 / 16, 64: math.pi**2 / 32}


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


# ============== 近似函数方程 ==============

def series_tail_bound(conductor: int, terms: int) -> float:
    """
    sum_{n > M} 项的严格上界（|a_n| <= 2n）

    g(n) = e^{-cn} [2(1 + cn)/n + 8 pi^2 / (N c)]，c = 2 pi / sqrt(N)；g 的相邻比 <= e^{-c}(1 + 1/n)。
    """
    c = 2 * math.pi / math.sqrt(conductor)
    n = terms + 1
    g = math.exp(-c * n) * (2 * (1 + c * n) / n + 8 * math.pi**2 / (conductor * c))
    ratio = math.exp(-c) * (1 + 1 / n)
    return g / (1 - ratio)


def lvalue2_series(curve: CurveSpec, terms: int | None = None, settings: Settings | None = None) -> LValueResult:
    """
    L(E, 2) = sum_n a_n [ Gamma(2, x_n)/n^2 + (4 pi^2 eps / N) E1(x_n) ]，x_n = 2 pi n / sqrt(N)

    Raises:
        TruncationError: 截断上界超过 settings.lseries_tolerance
    """
    settings = settings or get_settings()
    m = terms or settings.lseries_terms
    start = time.perf_counter()
    tail = series_tail_bound(curve.conductor, m)
    if tail > settings.lseries_tolerance:
        raise TruncationError(
            f"{m} terms leave a tail bound {tail:.3e} above tolerance {settings.lseries_tolerance:.3e}"
        )

    a = np.asarray(cuspform_coeffs(curve, m), dtype=np.float64)
    n = np.arange(1, m + 1, dtype=np.float64)
    x = 2 * math.pi * n / math.sqrt(curve.conductor)
    bracket = (1 + x) * np.exp(-x) / (n * n) + 4 * math.pi**2 * curve.root_number / curve.conductor * special.exp1(x)
    contributions = a * bracket
    value = math.fsum(contributions)
    error_bound = tail + 8 * EPS * float(np.abs(contributions).sum())
    logger.info(f"L(E_{curve.conductor}, 2) series: {value!r} (M={m}, bound {error_bound:.3e})")
    return LValueResult(
        curve=curve.conductor,
        method=LValueMethod.SERIES,
        value=value,
        error_bound=error_bound,
        terms_or_nodes=m,
        runtime_ms=_elapsed_ms(start),
    )


# ============== theta 积分 ==============

def theta_integrand(conductor: int, u: NDArray[np.float64] | float, crossover: float = 0.25) -> NDArray[np.float64]:
    """
    G(u) = theta2 theta3 (theta3^2 - theta2^2)(q) * log(theta3(q^m) / theta2(q^m))，q = e^{-2 pi u}

    u >= crossover 直接用级数；u < crossover 用 Jacobi 虚变换（t = 2u，r = e^{-pi/t}）：
        theta2 theta3 (theta3^2 - theta2^2)(q) = (2/t^2) theta3(r) theta4(r) theta2^2(r^2)
        theta3(q^m) / theta2(q^m) = theta3(p) / theta4(p)，p = e^{-pi/(m t)}
    """
    if conductor not in _LOG_FACTOR_POWER:
        raise DomainError(f"theta integral exists only for conductors 32 and 64, got {conductor}")
    m = _LOG_FACTOR_POWER[conductor]
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    out = np.zeros_like(u)

    direct = u >= crossover
    if np.any(direct):
        ud = u[direct]
        lq = -2 * math.pi * ud
        t2 = thetanum.theta2(lq)
        t3 = thetanum.theta3(lq)
        weight = t2 * t3 * (t3 * t3 - t2 * t2)
        log_ratio = thetanum.log_theta3(m * lq) - thetanum.log_theta2(m * lq)
        out[direct] = weight * log_ratio

    modular = (~direct) & (u > 0)
    if np.any(modular):
        t = 2 * u[modular]
        lr = -math.pi / t
        weight = (
            2 / (t * t)
            * thetanum.theta3(lr) * thetanum.theta4(lr)
            * np.exp(2 * thetanum.log_theta2(2 * lr))
        )
        lp = -math.pi / (m * t)
        log_ratio = thetanum.log_theta3(lp) - thetanum.log_theta4(lp)
        out[modular] = weight * log_ratio
    return out


def _panel_edges(quad: QuadratureConfig) -> NDArray[np.float64]:
    head = np.linspace(0.0, quad.crossover, max(1, math.ceil(quad.crossover * quad.panels_per_unit)) + 1)
    body_panels = max(1, math.ceil((quad.upper - quad.crossover) * quad.panels_per_unit))
    body = np.linspace(quad.crossover, quad.upper, body_panels + 1)
    return np.concatenate([head, body[1:]])


def _gauss_panels(conductor: int, quad: QuadratureConfig, nodes: int) -> tuple[float, float]:
    """分段 Gauss-Legendre；返回 (积分值, sum |w f|)"""
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = _panel_edges(quad)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = (hi - lo) / 2
    points = (lo + hi) / 2 + half * x
    weights = half * w
    values = theta_integrand(conductor, points.ravel(), quad.crossover).reshape(points.shape)
    products = weights * values
    return math.fsum(products.ravel()), float(np.abs(products).sum())


def lvalue2_theta_integral(curve: CurveSpec, quad: QuadratureConfig | None = None) -> LValueResult:
    """
    L(E_32, 2) = (pi^2/16) int_0^inf G(u) du，L(E_64, 2) = (pi^2/32) int_0^inf G(u) du

    误差估计取 nodes 与 nodes + 10 两次求积之差（下限为舍入量级）。

    Raises:
        DomainError: 导子不是 32 / 64
        QuadratureError: 误差估计超过容差
    """
    quad = quad or QuadratureConfig.from_settings(get_settings())
    conductor = curve.conductor
    if conductor not in _INTEGRAL_PREFACTOR:
        raise DomainError(f"theta integral exists only for conductors 32 and 64, got {conductor}")
    start = time.perf_counter()
    coarse, _ = _gauss_panels(conductor, quad, quad.nodes)
    fine, abs_mass = _gauss_panels(conductor, quad, quad.nodes + 10)
    prefactor = _INTEGRAL_PREFACTOR[conductor]
    value = prefactor * fine
    error_bound = prefactor * max(abs(fine - coarse), 64 * EPS * abs_mass)
    if error_bound > quad.tolerance:
        logger.warning(f"theta integral for E_{conductor}: error {error_bound:.3e} > {quad.tolerance:.3e}")
        raise QuadratureError(error_bound, quad.tolerance)
    n_panels = len(_panel_edges(quad)) - 1
    logger.info(f"L(E_{conductor}, 2) theta integral: {value!r} (bound {error_bound:.3e})")
    return LValueResult(
        curve=conductor,
        method=LValueMethod.THETA_INTEGRAL,
        value=value,
        error_bound=error_bound,
        terms_or_nodes=n_panels * (quad.nodes + 10),
        runtime_ms=_elapsed_ms(start),
    )


# ============== 初等积分 ==============

def elementary_integrand(conductor: int, t: float) -> float:
    """artanh((1 - t^4)^{1/m}) / (1 + t^2)，m = 2 (N = 32)，m = 4 (N = 64)"""
    m = _LOG_FACTOR_POWER[conductor]
    if t <= 0.0:
        return math.inf
    if t >= 1.0:
        return 0.0
    gap = -math.expm1(math.log1p(-(t**4)) / m)  # 1 - v
    v = 1.0 - gap
    return 0.5 * (math.log1p(v) - math.log(gap)) / (1.0 + t * t)


def lvalue2_elementary(curve: CurveSpec, tolerance: float | None = None) -> LValueResult:
    """
    L(E_N, 2) = (pi/8) int_0^1 artanh((1 - t^4)^{1/m}) / (1 + t^2) dt

    t = 0 处为可积对数奇点，由 QUADPACK 的外推处理。
    """
    conductor = curve.conductor
    if conductor not in _LOG_FACTOR_POWER:
        raise DomainError(f"elementary integral exists only for conductors 32 and 64, got {conductor}")
    tolerance = tolerance or get_settings().quad_tolerance
    start = time.perf_counter()
    integral, abserr, info = integrate.quad(
        lambda t: elementary_integrand(conductor, t),
        0.0,
        1.0,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
        full_output=True,
    )[:3]
    value = math.pi / 8 * integral
    error_bound = math.pi / 8 * max(abserr, 16 * EPS * abs(integral))
    if error_bound > tolerance:
        raise QuadratureError(error_bound, tolerance)
    return LValueResult(
        curve=conductor,
        method=LValueMethod.ELEMENTARY,
        value=value,
        error_bound=error_bound,
        terms_or_nodes=int(info["neval"]),
        runtime_ms=_elapsed_ms(start),
    )


# ============== 函数方程 ==============

def lprime0(curve: CurveSpec, l2: float) -> float:
    """L'(E_N, 0) = eps (N / 4 pi^2) L(E_N, 2)，eps 为根数"""
    if not math.isfinite(l2):
        raise DomainError(f"L(E, 2) must be finite, got {l2}")
    return curve.root_number * curve.conductor / (4 * math.pi**2) * l2


def compute_lvalue(curve: CurveSpec, method: LValueMethod, settings: Settings | None = None) -> LValueResult:
    """按路线分派"""
    settings = settings or get_settings()
    match method:
        case LValueMethod.SERIES:
            return lvalue2_series(curve, settings=settings)
        case LValueMethod.THETA_INTEGRAL:
            return lvalue2_theta_integral(curve, QuadratureConfig.from_settings(settings))
        case LValueMethod.ELEMENTARY:
            return lvalue2_elementary(curve, settings.quad_tolerance)
