"""
属性测试：精确 q 级数

使用 hypothesis 进行属性测试，验证 FormalSeries 算术与 eta/theta 构造器。
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.infra import qseries
from app.infra.errors import (
    DomainError,
    InvalidMultiplierError,
    NonInvertibleSeriesError,
    TruncationError,
)
from app.infra.qseries import FormalSeries


# ============== 测试策略 ==============

multiplier_strategy = st.integers(min_value=1, max_value=8)
order_strategy = st.integers(min_value=1, max_value=30).map(lambda n: 24 * n)

small_series_strategy = st.builds(
    lambda terms: FormalSeries.from_terms(terms, 480),
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=480),
            st.fractions(min_value=-5, max_value=5, max_denominator=7),
        ),
        max_size=8,
    ),
)


# ============== Property 1: 构造器与已知展开 ==============
# **Feature: lvalue-verify, Property 1: 构造器与已知展开**
# **Validates: qseries.eta, qseries.theta**


def test_theta3_leading_coefficients():
    """
    **Feature: lvalue-verify, Property 1: 构造器与已知展开**

    theta3(q) 截断到 q^10：1 + 2q + 2q^4 + 2q^9。
    """
    assert qseries.theta(3, 1, 240).to_json_rows() == [[0, "1"], [24, "2"], [96, "2"], [216, "2"]]


def test_eta_pentagonal_exponents():
    """eta(q) = q^{1/24}(1 - q - q^2 + q^5 + q^7 - ...)"""
    series = qseries.eta(1, 24 * 8)
    assert dict(series.coeffs) == {
        1: Fraction(1),
        25: Fraction(-1),
        49: Fraction(-1),
        121: Fraction(1),
        169: Fraction(1),
    }


def test_theta2_half_integer_exponents():
    """theta2(q) = 2q^{1/4} + 2q^{9/4} + ...，指数分子为 6(2n+1)^2"""
    series = qseries.theta(2, 1, 24 * 7)
    assert sorted(series.coeffs) == [6, 54, 150]
    assert all(c == 2 for c in series.coeffs.values())


@given(k=multiplier_strategy, order=order_strategy)
def test_pentagonal_matches_direct_product(k: int, order: int):
    """
    **Feature: lvalue-verify, Property 1: 构造器与已知展开**

    *For any* 乘子 k 与截断阶，五边形数展开 SHALL 与逐因子乘积一致。
    """
    ok, mismatch = qseries.identity_equal(qseries.eta(k, order), qseries.direct_eta_product(k, order), order)
    assert ok, f"mismatch at {mismatch}"


@given(k=multiplier_strategy, order=order_strategy)
def test_substitute_power_matches_multiplier(k: int, order: int):
    """theta3(q) 的 q -> q^k 代换等于 theta3(q^k)"""
    substituted = qseries.theta(3, 1, order).substitute_power(k)
    direct = qseries.theta(3, k, order * k)
    assert qseries.identity_equal(substituted, direct, order * k)[0]


@pytest.mark.parametrize("k", [0, -3])
def test_invalid_multiplier_rejected(k: int):
    with pytest.raises(InvalidMultiplierError):
        qseries.eta(k, 240)


def test_theta_index_rejected():
    with pytest.raises(DomainError):
        qseries.theta(1, 1, 240)


# ============== Property 2: 环运算 ==============
# **Feature: lvalue-verify, Property 2: 环运算**
# **Validates: FormalSeries 算术与精度规则**


@given(a=small_series_strategy, b=small_series_strategy)
def test_addition_commutes(a: FormalSeries, b: FormalSeries):
    """
    **Feature: lvalue-verify, Property 2: 环运算**

    *For any* 两个级数，a + b 与 b + a SHALL 逐系数相同。
    """
    assert dict((a + b).coeffs) == dict((b + a).coeffs)
    assert dict((a - a).coeffs) == {}


@given(a=small_series_strategy, b=small_series_strategy)
@settings(max_examples=10)
def test_multiplication_commutes(a: FormalSeries, b: FormalSeries):
    left, right = a * b, b * a
    assert left.order24 == right.order24
    assert dict(left.coeffs) == dict(right.coeffs)


@given(k=st.integers(min_value=1, max_value=4), order=st.integers(min_value=4, max_value=20).map(lambda n: 24 * n))
@settings(max_examples=10)
def test_reciprocal_is_inverse(k: int, order: int):
    """
    **Feature: lvalue-verify, Property 2: 环运算**

    eta(q^k) * (1/eta(q^k)) = 1；倒数精度 P - 2v，乘积精度随之为 P - 2v。
    """
    series = qseries.eta(k, order)
    product = series * series.reciprocal()
    assert dict(product.coeffs) == {0: Fraction(1)}
    assert product.order24 == order - 2 * k


def test_reciprocal_precision_rule():
    """倒数精度 = P - 2v"""
    series = qseries.theta(2, 1, 240)
    assert series.reciprocal().order24 == 240 - 2 * 6


def test_zero_series_not_invertible():
    with pytest.raises(NonInvertibleSeriesError):
        FormalSeries.zero(240).reciprocal()
    with pytest.raises(NonInvertibleSeriesError):
        qseries.theta(3, 1, 240) / 0


@given(exponent=st.integers(min_value=0, max_value=6))
@settings(max_examples=7)
def test_power_matches_repeated_product(exponent: int):
    base = qseries.theta(4, 1, 480)
    expected = FormalSeries.constant(1, 480)
    for _ in range(exponent):
        expected = expected * base
    assert dict((base**exponent).coeffs) == dict(expected.coeffs)


def test_coefficient_beyond_precision_raises():
    with pytest.raises(TruncationError):
        qseries.theta(3, 1, 240).coefficient(264)


def test_identity_equal_reports_first_mismatch():
    a = qseries.theta(3, 1, 240)
    b = a + FormalSeries.from_terms([(96, 1)], 240)
    assert qseries.identity_equal(a, b, 240) == (False, 96)
    with pytest.raises(TruncationError):
        qseries.identity_equal(a, b, 264)


# ============== Property 3: 经典恒等式 ==============
# **Feature: lvalue-verify, Property 3: 经典恒等式**
# **Validates: Jacobi / Ramanujan / Lambert 恒等式**


@given(order=st.integers(min_value=2, max_value=40).map(lambda n: 24 * n))
@settings(max_examples=10)
def test_jacobi_quartic_identity(order: int):
    """
    **Feature: lvalue-verify, Property 3: 经典恒等式**

    *For any* 截断阶，theta3^4 = theta2^4 + theta4^4 SHALL 逐系数成立。
    """
    t2 = qseries.theta(2, 1, order)
    t3 = qseries.theta(3, 1, order)
    t4 = qseries.theta(4, 1, order)
    assert qseries.identity_equal(t3**4, t2**4 + t4**4, order)[0]


@given(order=st.integers(min_value=2, max_value=40).map(lambda n: 24 * n))
@settings(max_examples=10)
def test_ramanujan_eisenstein(order: int):
    """3 theta3^4(q) = 4 L(q^4) - L(q)"""
    lhs = qseries.theta(3, 1, order) ** 4
    rhs = qseries.eisenstein_L(order, 4).scale(4) - qseries.eisenstein_L(order)
    assert qseries.identity_equal(lhs.scale(3), rhs, order)[0]


@given(order=st.integers(min_value=1, max_value=40).map(lambda n: 24 * n))
@settings(max_examples=10)
def test_lambert_forms(order: int):
    assert qseries.identity_equal(qseries.theta(2, 1, order) ** 2, qseries.lambert_theta2sq(order), order)[0]
    assert qseries.identity_equal(qseries.theta(3, 1, order) ** 2, qseries.theta3sq_lambert(order), order)[0]


def test_chi_series_lemma():
    order = 24 * 60
    assert qseries.identity_equal(
        qseries.chi_series_lemma_lhs(order), qseries.chi_series_lemma_rhs(order), order
    )[0]


def test_twist_i_splits_theta3():
    """theta3(iq) = theta3(q^4) + i theta2(q^4)"""
    order = 24 * 50
    re, im = qseries.twist_i(qseries.theta(3, 1, order))
    assert qseries.identity_equal(re, qseries.theta(3, 4, order), order)[0]
    assert qseries.identity_equal(im, qseries.theta(2, 4, order), order)[0]


def test_twist_i_rejects_fractional_exponents():
    with pytest.raises(DomainError):
        qseries.twist_i(qseries.eta(1, 240))


def test_eisenstein_requires_whole_order():
    with pytest.raises(DomainError):
        qseries.eisenstein_L(250)


def test_series_is_immutable():
    series = qseries.theta(3, 1, 240)
    with pytest.raises(TypeError):
        series.coeffs[0] = Fraction(5)  # type: ignore[index]
    with pytest.raises(TypeError):
        hash(series)
