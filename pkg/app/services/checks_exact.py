"""
精确 q 级数恒等式检查（qs_*）

每个检查在 settings.order24 的截断下逐系数比较，没有容差。
"""

import logging
from fractions import Fraction

from app.infra import qseries
from app.schemas import CheckReport
from app.services.checks_base import CheckContext, CheckSpec, exact_report
from app.services.qexpr import expand

logger = logging.getLogger(__name__)


def _dsl_pairs(order: int, *identities: tuple[str, str]) -> list[tuple[str, qseries.FormalSeries, qseries.FormalSeries]]:
    return [(f"{lhs} = {rhs}", expand(lhs, order), expand(rhs, order)) for lhs, rhs in identities]


def check_etatotheta(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(order, ("eta(q^4)^2 * eta(q^8)^2", "1/4 * theta2(q^2)^2 * theta4(q^4)^2"))
    return exact_report("qs_etatotheta", "product of Jacobi's theta functions", pairs, order)


def check_cond64_identity(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(
        order,
        ("eta(q^8)^8 / (eta(q^4)^2 * eta(q^16)^2)", "1/4 * theta2(q^2)^2 * theta4(q^8)^2"),
    )
    return exact_report("qs_cond64_identity", "We have the identity", pairs, order)


def check_jacobifor1(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(
        order,
        ("eta(q^2)^5 / (eta(q)^2 * eta(q^4)^2)", "theta3(q)"),
        ("eta(q)^2 / eta(q^2)", "theta4(q)"),
    )
    return exact_report("qs_jacobifor1", "If we use the formulas", pairs, order)


def check_triple_product(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    eta3 = expand("eta(q^8)^3", order)
    pairs = [
        ("eta^3(q^8) = (1/2) theta2 theta3 theta4 (q^4)", eta3,
         expand("1/2 * theta2(q^4) * theta3(q^4) * theta4(q^4)", order)),
        ("eta^3(q^8) = sum (-1)^n (2n+1) q^{(2n+1)^2}", eta3, qseries.eta_triple_product_sum(order)),
    ]
    return exact_report("qs_triple_product", "By Jacobi's triple product formula", pairs, order)


def check_lambert(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = [("theta2^2(q) = 4 sum chi(n) q^{n/2}/(1-q^n)", expand("theta2(q)^2", order), qseries.lambert_theta2sq(order))]
    return exact_report("qs_lambert", "following Lambert series expansion", pairs, order)


def check_ramanujan_E2(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(order, ("3 * theta3(q)^4", "4 * L(q^4) - L(q)"))
    return exact_report("qs_ramanujan_E2", "Ramanujan proved", pairs, order)


def check_seriescal2(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    lhs = qseries.chi_series_lemma_lhs(order)
    _, im_theta = qseries.twist_i(expand("theta3(q)^4", order))
    _, im_l = qseries.twist_i(qseries.eisenstein_L(order))
    pairs = [
        ("sum r chi(nr) q^{nr} = (1/2) theta2 theta3 (theta3^2 - theta2^2)(q^4)", lhs, qseries.chi_series_lemma_rhs(order)),
        ("sum r chi(nr) q^{nr} = (1/8) Im theta3^4(iq)", lhs, im_theta.scale(Fraction(1, 8))),
        ("sum r chi(nr) q^{nr} = -(1/24) Im L(iq)", lhs, im_l.scale(Fraction(-1, 24))),
    ]
    return exact_report("qs_seriescal2", "Ramanujan proved", pairs, order)


def check_theta_iq(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    re, im = qseries.twist_i(qseries.theta(3, 1, order))
    pairs = [
        ("Re theta3(iq) = theta3(q^4)", re, qseries.theta(3, 4, order)),
        ("Im theta3(iq) = theta2(q^4)", im, qseries.theta(2, 4, order)),
    ]
    return exact_report("qs_theta_iq", "theta3(iq) = theta3(q^4) + i theta2(q^4)", pairs, order)


def check_theta34(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(order, ("theta3(q) * theta4(q)", "theta4(q^2)^2"))
    return exact_report("qs_theta34", "theta3(q) theta4(q) = theta4^2(q^2)", pairs, order)


def check_theta2sq_diff(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(order, ("theta2(q^2)^2", "theta3(q)^2 - theta3(q^2)^2"))
    return exact_report("qs_theta2sq_diff", "theta2^2(q^2) = theta3^2(q) - theta3^2(q^2)", pairs, order)


def check_theta3sq_lambert(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = [("theta3^2(q) = 1 + 4 sum q^n/(1+q^{2n})", expand("theta3(q)^2", order), qseries.theta3sq_lambert(order))]
    return exact_report("qs_theta3sq_lambert", "theta3^2(q) = 1 + 4 sum q^n/(1+q^{2n})", pairs, order)


def check_theta2_duplication(ctx: CheckContext) -> CheckReport:
    order = ctx.settings.order24
    pairs = _dsl_pairs(order, ("2 * theta2(q^2) * theta3(q^2)", "theta2(q)^2"))
    return exact_report("qs_theta2_duplication", "2 theta2(q^2) theta3(q^2) = theta2^2(q)", pairs, order)


CHECKS: list[CheckSpec] = [
    CheckSpec("qs_etatotheta", "product of Jacobi's theta functions", check_etatotheta),
    CheckSpec("qs_cond64_identity", "We have the identity", check_cond64_identity),
    CheckSpec("qs_jacobifor1", "If we use the formulas", check_jacobifor1),
    CheckSpec("qs_triple_product", "By Jacobi's triple product formula", check_triple_product),
    CheckSpec("qs_lambert", "following Lambert series expansion", check_lambert),
    CheckSpec("qs_ramanujan_E2", "Ramanujan proved", check_ramanujan_E2),
    CheckSpec("qs_seriescal2", "Ramanujan proved", check_seriescal2),
    CheckSpec("qs_theta_iq", "theta3(iq) = theta3(q^4) + i theta2(q^4)", check_theta_iq),
    CheckSpec("qs_theta34", "theta3(q) theta4(q) = theta4^2(q^2)", check_theta34),
    CheckSpec("qs_theta2sq_diff", "theta2^2(q^2) = theta3^2(q) - theta3^2(q^2)", check_theta2sq_diff),
    CheckSpec("qs_theta3sq_lambert", "theta3^2(q) = 1 + 4 sum q^n/(1+q^{2n})", check_theta3sq_lambert),
    CheckSpec("qs_theta2_duplication", "2 theta2(q^2) theta3(q^2) = theta2^2(q)", check_theta2_duplication),
]
