"""
L 值定理、超几何结构与调节子系数链检查（thm_* / lval_* / hyp_* / reg_*）
"""

import logging
import math
from functools import lru_cache

from app.config import Settings
from app.infra.specfun import ftilde, ftilde_via_dixon, gamma, hyp3f2_unit, thomae
from app.models import CheckStatus, LValueMethod, RealPeriod
from app.schemas import CheckReport, FtildeParams, HypParams, HypValue, LValueResult, RegulatorConstants
from app.services.checks_base import CheckContext, CheckSpec, Sample, numeric_report
from app.services.curves import get_curve
from app.services.lseries import compute_lvalue, lprime0

logger = logging.getLogger(__name__)


# ============== 常数表 ==============

THEOREM_PARAMS: dict[str, HypParams] = {
    "A32": HypParams.of(0.5, 0.5, 1.0, 1.5, 0.75),
    "B32": HypParams.of(0.5, 0.5, 1.0, 1.5, 1.25),
    "A64": HypParams.of(0.25, 0.25, 1.0, 0.5, 1.25),
    "B64": HypParams.of(0.75, 0.75, 1.0, 1.5, 1.75),
    "A27": HypParams.of(1 / 3, 1 / 3, 1.0, 2 / 3, 4 / 3),
    "B27": HypParams.of(2 / 3, 2 / 3, 1.0, 4 / 3, 5 / 3),
}

FTILDE_PAIRS: list[tuple[float, float]] = [
    (1 / 3, 1 / 3), (2 / 3, 2 / 3), (0.25, 0.5), (0.75, 0.5), (0.25, 0.25), (0.75, 0.75),
]


def theorem_terms(conductor: int) -> list[tuple[float, HypParams]]:
    """L(E_N, 2) = sum coefficient * 3F2(...)"""
    sqrt_pi = math.sqrt(math.pi)
    match conductor:
        case 32:
            return [
                (sqrt_pi * gamma(0.25) ** 2 / (32 * math.sqrt(2)), THEOREM_PARAMS["A32"]),
                (-sqrt_pi * gamma(0.75) ** 2 / (8 * math.sqrt(2)), THEOREM_PARAMS["B32"]),
            ]
        case 64:
            return [
                (sqrt_pi * gamma(0.25) ** 2 / 32, THEOREM_PARAMS["A64"]),
                (-sqrt_pi * gamma(0.75) ** 2 / 48, THEOREM_PARAMS["B64"]),
            ]
        case 27:
            return [
                (gamma(1 / 3) ** 3 / 27, THEOREM_PARAMS["A27"]),
                (-gamma(2 / 3) ** 3 / 18, THEOREM_PARAMS["B27"]),
            ]
    return []


REGULATORS: dict[int, RegulatorConstants] = {
    27: RegulatorConstants(
        conductor=27,
        pair_plus=(1 / 3, 1 / 3),
        pair_minus=(2 / 3, 2 / 3),
        delta_coefficient=81 * math.sqrt(3) / (2 * math.pi),
        reg_prefactor=-math.sqrt(math.sqrt(3) / (2 * math.pi)) / 6,
        final_coefficient=-1.5,
        real_period=RealPeriod.SQRT_2PI_OVER_SQRT3,
    ),
    32: RegulatorConstants(
        conductor=32,
        pair_plus=(0.25, 0.5),
        pair_minus=(0.75, 0.5),
        delta_coefficient=64 / math.pi,
        reg_prefactor=-math.sqrt(2) / (16 * math.sqrt(math.pi)),
        final_coefficient=-0.5,
        real_period=RealPeriod.SQRT_2PI,
    ),
    64: RegulatorConstants(
        conductor=64,
        pair_plus=(0.25, 0.25),
        pair_minus=(0.75, 0.75),
        delta_coefficient=128 / math.pi,
        reg_prefactor=-1 / (16 * math.sqrt(math.pi)),
        final_coefficient=-0.5,
        real_period=RealPeriod.SQRT_PI,
    ),
}


# ============== 缓存的数值 ==============

@lru_cache(maxsize=64)
def cached_hyp(params: HypParams, terms: int) -> HypValue:
    return hyp3f2_unit(params, terms)


@lru_cache(maxsize=64)
def cached_ftilde(alpha: float, beta_: float, terms: int) -> float:
    return ftilde(FtildeParams(alpha=alpha, beta=beta_), terms)


@lru_cache(maxsize=32)
def cached_lvalue(conductor: int, method: LValueMethod, settings: Settings) -> LValueResult:
    return compute_lvalue(get_curve(conductor), method, settings)


def theorem_rhs(conductor: int, terms: int) -> HypValue:
    """定理右边的 Gamma / 3F2 组合及其误差估计"""
    parts = [(coef, cached_hyp(params, terms)) for coef, params in theorem_terms(conductor)]
    return HypValue(
        value=math.fsum(coef * hv.value for coef, hv in parts),
        error_bound=sum(abs(coef) * hv.error_bound for coef, hv in parts),
        terms=terms,
    )


def delta_ftilde(constants: RegulatorConstants, terms: int) -> float:
    return cached_ftilde(*constants.pair_plus, terms) - cached_ftilde(*constants.pair_minus, terms)


def _routes(conductor: int) -> list[LValueMethod]:
    if conductor == 27:
        return [LValueMethod.SERIES]
    return [LValueMethod.SERIES, LValueMethod.THETA_INTEGRAL, LValueMethod.ELEMENTARY]


# ============== L 值定理 ==============

_THEOREM_LOCATIONS = {
    32: "Now we express the value",
    64: "in terms of values of",
    27: "Rogers and Zudilin proved the following formula",
}


def _theorem_check(conductor: int):
    def run(ctx: CheckContext) -> CheckReport:
        rhs = theorem_rhs(conductor, ctx.settings.hyp_terms)
        samples = [
            Sample(f"{method.value} route", cached_lvalue(conductor, method, ctx.settings).value, rhs.value)
            for method in _routes(conductor)
        ]
        return numeric_report(f"thm_L{conductor}", _THEOREM_LOCATIONS[conductor], samples, ctx.tol("tol_theorem"))

    return run


def _cross_method_check(conductor: int):
    def run(ctx: CheckContext) -> CheckReport:
        series = cached_lvalue(conductor, LValueMethod.SERIES, ctx.settings)
        integral = cached_lvalue(conductor, LValueMethod.THETA_INTEGRAL, ctx.settings)
        report = numeric_report(
            f"lval_cross_{conductor}",
            "First we prove the following formula" if conductor == 32 else "We have the identity",
            [Sample("series vs theta integral", series.value, integral.value)],
            ctx.tol("tol_cross_method"),
        )
        bound = series.error_bound + integral.error_bound
        dominated = report.abs_err <= bound
        report.detail = f"{report.detail}; reported bounds sum {bound:.3e} {'dominate' if dominated else 'do NOT dominate'}"
        return report

    return run


# ============== 超几何结构 ==============

def check_thomae_invariance(ctx: CheckContext) -> CheckReport:
    terms = ctx.settings.hyp_terms
    samples = []
    for label, params in THEOREM_PARAMS.items():
        transformed, prefactor = thomae(params)
        samples.append(Sample(label, cached_hyp(params, terms).value, prefactor * cached_hyp(transformed, terms).value))
    return numeric_report("hyp_thomae_invariance", "If we use Thomae's formula", samples, ctx.tol("tol_thomae"))


def check_ftilde_routes(ctx: CheckContext) -> CheckReport:
    terms = ctx.settings.hyp_terms
    samples = [
        Sample(
            f"F~({al:.4g},{be:.4g})",
            cached_ftilde(al, be, terms),
            ftilde_via_dixon(FtildeParams(alpha=al, beta=be), terms),
        )
        for al, be in FTILDE_PAIRS
    ]
    return numeric_report("hyp_ftilde_routes", "values of hypergeometric functions F~", samples, ctx.tol("tol_ftilde_routes"))


def check_ftilde_positive(ctx: CheckContext) -> CheckReport:
    """
    Delta F~ > 0

    全为正：pass；出现非零负值：nonpositive（不计为失败）；在误差量级内为零：fail。
    """
    terms = ctx.settings.hyp_terms
    deltas = {n: delta_ftilde(c, terms) for n, c in REGULATORS.items()}
    floor = ctx.tol("tol_ftilde_routes")
    worst_n = min(deltas, key=deltas.get)
    worst = deltas[worst_n]
    if worst > floor:
        status = CheckStatus.PASS
    elif all(abs(d) > floor for d in deltas.values()):
        status = CheckStatus.NONPOSITIVE
        logger.warning(f"hyp_ftilde_positive: Delta F~ for N={worst_n} is negative ({worst!r}) but nonzero")
    else:
        status = CheckStatus.FAIL
        logger.warning(f"hyp_ftilde_positive: Delta F~ for N={worst_n} is indistinguishable from zero")
    return CheckReport(
        name="hyp_ftilde_positive",
        lhs=worst,
        rhs=0.0,
        tolerance=floor,
        passed=status == CheckStatus.PASS,
        paper_location="monotonically decreasing with respect to each",
        status=status,
        detail=", ".join(f"N={n}: {d:.12g}" for n, d in deltas.items()),
    )


# ============== 调节子系数链 ==============

_REG_LOCATION = "With the notations as above"


def _regulator_check(conductor: int):
    def run(ctx: CheckContext) -> CheckReport:
        constants = REGULATORS[conductor]
        delta = delta_ftilde(constants, ctx.settings.hyp_terms)
        l2 = cached_lvalue(conductor, LValueMethod.SERIES, ctx.settings).value
        return numeric_report(
            f"reg_{conductor}",
            _REG_LOCATION,
            [Sample("Delta F~ vs coefficient * L(E,2)", delta, constants.delta_coefficient * l2)],
            ctx.tol("tol_regulator"),
            relative=True,
        )

    return run


def recomposed_final_coefficient(conductor: int, settings: Settings) -> float:
    """reg_prefactor * Delta F~ / (L'(E, 0) Omega_R)"""
    constants = REGULATORS[conductor]
    curve = get_curve(conductor)
    delta = delta_ftilde(constants, settings.hyp_terms)
    l2 = cached_lvalue(conductor, LValueMethod.SERIES, settings).value
    return constants.reg_prefactor * delta / (lprime0(curve, l2) * constants.real_period.numeric)


def _final_coefficient_check(conductor: int):
    def run(ctx: CheckContext) -> CheckReport:
        constants = REGULATORS[conductor]
        return numeric_report(
            f"reg_final_{conductor}",
            f"We know Omega_R = {constants.real_period.value}",
            [Sample("recomposed coefficient", recomposed_final_coefficient(conductor, ctx.settings),
                    constants.final_coefficient)],
            ctx.tol("tol_regulator"),
            relative=True,
        )

    return run


CHECKS: list[CheckSpec] = [
    CheckSpec("thm_L32", _THEOREM_LOCATIONS[32], _theorem_check(32)),
    CheckSpec("thm_L64", _THEOREM_LOCATIONS[64], _theorem_check(64)),
    CheckSpec("thm_L27", _THEOREM_LOCATIONS[27], _theorem_check(27)),
    CheckSpec("lval_cross_32", "First we prove the following formula", _cross_method_check(32)),
    CheckSpec("lval_cross_64", "We have the identity", _cross_method_check(64)),
    CheckSpec("hyp_thomae_invariance", "If we use Thomae's formula", check_thomae_invariance),
    CheckSpec("hyp_ftilde_routes", "values of hypergeometric functions F~", check_ftilde_routes),
    CheckSpec("hyp_ftilde_positive", "monotonically decreasing with respect to each", check_ftilde_positive),
    CheckSpec("reg_27", _REG_LOCATION, _regulator_check(27)),
    CheckSpec("reg_32", _REG_LOCATION, _regulator_check(32)),
    CheckSpec("reg_64", _REG_LOCATION, _regulator_check(64)),
    CheckSpec("reg_final_27", "We know Omega_R = sqrt(2*pi/sqrt(3))", _final_coefficient_check(27), ("thm_L27",)),
    CheckSpec("reg_final_32", "We know Omega_R = sqrt(2*pi)", _final_coefficient_check(32), ("thm_L32",)),
    CheckSpec("reg_final_64", "We know Omega_R = sqrt(pi)", _final_coefficient_check(64), ("thm_L64",)),
]
