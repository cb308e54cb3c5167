"""
曲线注册表与尖点形式系数

E_27: y^2 = x^3 - 27/4, f = eta^2(q^3) eta^2(q^9)
E_32: y^2 = x^3 + 4x,   f = eta^2(q^4) eta^2(q^8)
E_64: y^2 = x^3 - 4x,   f = eta^8(q^8) / (eta^2(q^4) eta^2(q^16))
"""

import logging
from fractions import Fraction
from functools import lru_cache

import numpy as np

from app.infra.errors import DomainError, TruncationError, UnknownCurveError
from app.models import CurveSpec, RealPeriod
from app.services.qexpr import eval_expr, parse

logger = logging.getLogger(__name__)


def _curve(
    conductor: int,
    cuspform: str,
    real_period: RealPeriod,
    a4: Fraction | int,
    a6: Fraction | int,
) -> CurveSpec:
    return CurveSpec(
        conductor=conductor,
        cuspform_text=cuspform,
        cuspform=parse(cuspform),
        root_number=1,
        real_period=real_period,
        a4=Fraction(a4),
        a6=Fraction(a6),
    )


CURVES: dict[int, CurveSpec] = {
    27: _curve(27, "eta(q^3)^2 * eta(q^9)^2", RealPeriod.SQRT_2PI_OVER_SQRT3, 0, Fraction(-27, 4)),
    32: _curve(32, "eta(q^4)^2 * eta(q^8)^2", RealPeriod.SQRT_2PI, 4, 0),
    64: _curve(64, "eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)", RealPeriod.SQRT_PI, -4, 0),
}


def get_curve(conductor: int) -> CurveSpec:
    """
    Raises:
        UnknownCurveError: 导子不在 {27, 32, 64}
    """
    try:
        return CURVES[conductor]
    except KeyError:
        raise UnknownCurveError(conductor) from None


@lru_cache(maxsize=32)
def _coefficients(conductor: int, count: int) -> tuple[int, ...]:
    curve = get_curve(conductor)
    series = eval_expr(curve.cuspform, 24 * count)
    coeffs = [series.coefficient(24 * n) for n in range(1, count + 1)]
    bad = [n for n, c in enumerate(coeffs, start=1) if c.denominator != 1]
    if bad:
        raise TruncationError(f"cusp form of E_{conductor} has non-integral coefficient at q^{bad[0]}")
    off_lattice = [e for e in series.coeffs if e % 24]
    if off_lattice:
        raise TruncationError(f"cusp form of E_{conductor} has fractional exponent numerator {off_lattice[0]}")
    logger.info(f"computed {count} cusp-form coefficients for E_{conductor}")
    return tuple(int(c) for c in coeffs)


def cuspform_coeffs(curve: CurveSpec, count: int) -> list[int]:
    """
    a_1, ..., a_count

    Raises:
        DomainError: count < 1
        TruncationError: 系数不是整数（截断不足）
    """
    if count < 1:
        raise DomainError(f"need at least one coefficient, got {count}")
    return list(_coefficients(curve.conductor, count))


def point_count_ap(curve: CurveSpec, p: int) -> int:
    """
    a_p = p - #{(x, y) in F_p^2 : y^2 = x^3 + a4 x + a6}

    只对好素数 p >= 5 有意义。
    """
    if p < 5 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise DomainError(f"point count needs a prime p >= 5, got {p}")
    a4 = curve.a4.numerator * pow(curve.a4.denominator, -1, p) % p
    a6 = curve.a6.numerator * pow(curve.a6.denominator, -1, p) % p
    x = np.arange(p, dtype=np.int64)
    rhs = (x * x % p * x + a4 * x + a6) % p
    square_roots = np.bincount(x * x % p, minlength=p)
    affine = int(square_roots[rhs].sum())
    return p - affine
