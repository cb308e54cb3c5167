"""
属性测试：Pydantic Schema 与配置验证

使用 hypothesis 进行属性测试，验证数据验证逻辑的正确性。
"""

import math

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from app.config import Settings
from app.models import CheckStatus, OutputMode
from app.schemas import (
    CheckReport,
    CheckRunRequest,
    CliConfig,
    FtildeParams,
    HypParams,
    QExpandRequest,
)

finite_strategy = st.floats(min_value=-10, max_value=10, allow_nan=False)


# ============== Property 26: 参数验证 ==============
# **Feature: lvalue-verify, Property 26: 参数验证**
# **Validates: HypParams, FtildeParams**


@given(values=st.tuples(finite_strategy, finite_strategy, finite_strategy, finite_strategy, finite_strategy))
def test_hyp_params_accept_finite(values: tuple[float, ...]):
    """
    **Feature: lvalue-verify, Property 26: 参数验证**

    *For any* 五个有限实数，HypParams SHALL 接受，且 canonical 只在两组内部排序。
    """
    params = HypParams.of(*values)
    canonical = params.canonical()
    assert sorted(values[:3]) == [canonical.a, canonical.b, canonical.c]
    assert sorted(values[3:]) == [canonical.e, canonical.f]
    assert canonical.s == pytest.approx(params.s, abs=1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_hyp_params_reject_non_finite(bad: float):
    with pytest.raises(ValidationError):
        HypParams.of(0.5, bad, 1.0, 1.5, 0.75)


@pytest.mark.parametrize("alpha, beta", [(0.0, 0.5), (0.5, -1.0)])
def test_ftilde_params_positive(alpha: float, beta: float):
    with pytest.raises(ValidationError):
        FtildeParams(alpha=alpha, beta=beta)


# ============== Property 27: 运行配置 ==============
# **Feature: lvalue-verify, Property 27: 运行配置**
# **Validates: Settings, CliConfig, CheckRunRequest**


@given(n=st.integers(min_value=1, max_value=500))
def test_order_multiple_of_24(n: int):
    """
    **Feature: lvalue-verify, Property 27: 运行配置**

    *For any* 正整数 n，截断阶 SHALL 当且仅当是 24 的倍数时被接受。
    """
    if n % 24 == 0:
        assert Settings(order24=n).order24 == n
        assert CliConfig(subcommand="verify", order24=n).to_settings().order24 == n
        assert CheckRunRequest(order24=n).order24 == n
    else:
        with pytest.raises(ValidationError):
            Settings(order24=n)
        with pytest.raises(ValidationError):
            CliConfig(subcommand="verify", order24=n)
        with pytest.raises(ValidationError):
            CheckRunRequest(order24=n)


def test_settings_ignore_environment(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ORDER24", "48")
    monkeypatch.setenv("LSERIES_TERMS", "7")
    settings = Settings()
    assert settings.order24 == 4800
    assert settings.lseries_terms == 500


def test_settings_overrides_skip_none():
    base = Settings()
    changed = base.with_overrides(order24=480, seed=None)
    assert changed.order24 == 480
    assert changed.seed is None
    assert base.order24 == 4800


def test_cli_config_defaults():
    config = CliConfig(subcommand="verify")
    assert config.output is OutputMode.TABLE
    assert config.tolerance is None
    settings = config.to_settings()
    assert (settings.parallelism, settings.seed) == (4, None)
    with pytest.raises(ValidationError):
        CliConfig(subcommand="verify", tolerance=0.0)
    with pytest.raises(ValidationError):
        CliConfig(subcommand="verify", parallelism=0)


def test_run_request_selector_exclusive():
    assert CheckRunRequest(names=["qs_lambert"]).prefix is None
    with pytest.raises(ValidationError):
        CheckRunRequest(names=["qs_lambert"], prefix="qs_")


def test_qexpand_request_bounds():
    assert QExpandRequest(expr="eta(q)").order == 240
    with pytest.raises(ValidationError):
        QExpandRequest(expr="")
    with pytest.raises(ValidationError):
        QExpandRequest(expr="eta(q)", order=0)


# ============== Property 28: 报告模型 ==============
# **Feature: lvalue-verify, Property 28: 报告模型**
# **Validates: CheckReport**


def test_report_accepts_alias_and_field_name():
    by_alias = CheckReport.model_validate({"name": "x", "lhs": "exact", "rhs": "exact", "pass": True})
    by_name = CheckReport(name="x", lhs="exact", rhs="exact", passed=True)
    assert by_alias == by_name
    assert by_alias.status is CheckStatus.PASS
    assert by_alias.to_row()["pass"] is True
    assert by_alias.to_row()["depends_on"] == []
