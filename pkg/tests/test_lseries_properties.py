"""
属性测试：L(E_N, 2) 的三条数值路线与 L'(E_N, 0)
"""

import math

import pytest
from hypothesis import given, settings, strategies as st

from app.config import Settings
from app.infra.errors import DomainError, TruncationError
from app.models import LValueMethod
from app.services.curves import get_curve
from app.services.lseries import (
    compute_lvalue,
    elementary_integrand,
    lprime0,
    lvalue2_elementary,
    lvalue2_series,
    lvalue2_theta_integral,
    series_tail_bound,
    theta_integrand,
)


# ============== Property 15: 路线一致 ==============
# **Feature: lvalue-verify, Property 15: 路线一致**
# **Validates: lseries.lvalue2_series, lvalue2_theta_integral, lvalue2_elementary**


@pytest.mark.parametrize("conductor", [32, 64])
def test_series_matches_theta_integral(conductor: int):
    """
    **Feature: lvalue-verify, Property 15: 路线一致**

    近似函数方程与 theta 积分 SHALL 相差不超过 1e-8。
    """
    curve = get_curve(conductor)
    series = lvalue2_series(curve)
    integral = lvalue2_theta_integral(curve)
    assert abs(series.value - integral.value) <= 1e-8
    assert series.method is LValueMethod.SERIES
    assert integral.method is LValueMethod.THETA_INTEGRAL


@pytest.mark.parametrize("conductor", [32, 64])
def test_elementary_matches_series(conductor: int):
    curve = get_curve(conductor)
    assert abs(lvalue2_elementary(curve).value - lvalue2_series(curve).value) <= 1e-8


def test_series_stable_under_more_terms():
    """M = 500 与 M = 1000 之差不超过截断上界"""
    for conductor in (27, 32, 64):
        curve = get_curve(conductor)
        short = lvalue2_series(curve, terms=500)
        long = lvalue2_series(curve, terms=1000)
        assert abs(short.value - long.value) <= short.error_bound + long.error_bound
        assert short.value > 0


def test_compute_lvalue_dispatch():
    curve = get_curve(32)
    for method in LValueMethod:
        result = compute_lvalue(curve, method)
        assert result.method is method
        assert result.curve == 32
        assert result.error_bound > 0


# ============== Property 16: 截断与定义域 ==============
# **Feature: lvalue-verify, Property 16: 截断与定义域**
# **Validates: lseries.series_tail_bound, lseries.theta_integrand**


@given(conductor=st.sampled_from([27, 32, 64]), terms=st.integers(min_value=10, max_value=400))
@settings(max_examples=30)
def test_tail_bound_decreasing(conductor: int, terms: int):
    """
    **Feature: lvalue-verify, Property 16: 截断与定义域**

    *For any* 导子与项数，截断上界 SHALL 为正且随项数严格递减。
    """
    bound = series_tail_bound(conductor, terms)
    assert bound > 0
    assert series_tail_bound(conductor, terms + 1) < bound


def test_too_few_terms_rejected():
    with pytest.raises(TruncationError):
        lvalue2_series(get_curve(64), terms=5)


def test_settings_terms_are_used():
    result = lvalue2_series(get_curve(27), settings=Settings(lseries_terms=700))
    assert result.terms_or_nodes == 700


@pytest.mark.parametrize("conductor", [32, 64])
def test_integrand_decays(conductor: int):
    assert abs(theta_integrand(conductor, 15.0)[0]) < 1e-7
    assert theta_integrand(conductor, 0.0)[0] == 0.0


@given(conductor=st.sampled_from([32, 64]), u=st.floats(min_value=0.2, max_value=0.4))
@settings(max_examples=20)
def test_integrand_branches_agree(conductor: int, u: float):
    """直接级数与 Jacobi 虚变换在分界点附近给出同一个值"""
    via_series = theta_integrand(conductor, u, crossover=0.1)[0]
    via_modular = theta_integrand(conductor, u, crossover=0.5)[0]
    assert via_series == pytest.approx(via_modular, rel=1e-10)


def test_integral_routes_need_even_conductor():
    curve = get_curve(27)
    with pytest.raises(DomainError):
        lvalue2_theta_integral(curve)
    with pytest.raises(DomainError):
        lvalue2_elementary(curve)
    with pytest.raises(DomainError):
        theta_integrand(27, 1.0)


def test_elementary_integrand_endpoints():
    assert elementary_integrand(32, 1.0) == 0.0
    assert math.isinf(elementary_integrand(64, 0.0))
    assert elementary_integrand(32, 0.5) > elementary_integrand(32, 0.9) > 0


# ============== Property 17: 函数方程 ==============
# **Feature: lvalue-verify, Property 17: 函数方程**
# **Validates: lseries.lprime0**


@given(l2=st.floats(min_value=0.0, max_value=10.0), scale=st.floats(min_value=0.5, max_value=4.0))
def test_lprime0_linear(l2: float, scale: float):
    """
    **Feature: lvalue-verify, Property 17: 函数方程**

    *For any* L(E, 2)，L'(E, 0) SHALL 与之成正比，比例为 N / (4 pi^2)。
    """
    curve = get_curve(32)
    assert lprime0(curve, scale * l2) == pytest.approx(scale * lprime0(curve, l2), rel=1e-13, abs=1e-300)


def test_lprime0_factors():
    assert lprime0(get_curve(32), 1.0) == pytest.approx(8 / math.pi**2, rel=1e-14)
    assert lprime0(get_curve(27), 1.0) == pytest.approx(27 / (4 * math.pi**2), rel=1e-14)
    assert lprime0(get_curve(64), 1.0) == pytest.approx(16 / math.pi**2, rel=1e-14)
    with pytest.raises(DomainError):
        lprime0(get_curve(64), math.nan)
