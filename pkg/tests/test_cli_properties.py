"""
属性测试：命令行

直接调用 main(argv) 检查输出与退出码，另用一个子进程覆盖 python -m 入口。
"""

import json
import math
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from app.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, dump_json, format_report_table, main
from app.models import CheckStatus
from app.schemas import CheckReport


# ============== Property 21: JSON 输出 ==============
# **Feature: lvalue-verify, Property 21: JSON 输出**
# **Validates: cli.dump_json**


@given(x=st.floats(allow_nan=False, allow_infinity=False))
def test_dump_json_floats_round_trip(x: float):
    """
    **Feature: lvalue-verify, Property 21: JSON 输出**

    *For any* 有限浮点数，17 位有效数字的输出 SHALL 被 JSON 解析回同一个值。
    """
    assert json.loads(dump_json(x)) == x


def test_dump_json_structure():
    assert dump_json({"a": [1, 0.5, "x"], "b": None, "c": True}) == '{"a": [1, 0.5, "x"], "b": null, "c": true}'
    assert dump_json([math.nan, math.inf]) == "[null, null]"
    assert dump_json(0.1) == "0.10000000000000001"
    with pytest.raises(TypeError):
        dump_json(object())


def test_report_table_lists_failures():
    reports = [
        CheckReport(name="ok_check", lhs=1.0, rhs=1.0, passed=True, status=CheckStatus.PASS),
        CheckReport(
            name="bad", lhs=1.0, rhs=2.0, abs_err=1.0, passed=False,
            status=CheckStatus.FAIL, detail="worst of 1 samples: u=1",
        ),
    ]
    table = format_report_table(reports)
    assert "-> worst of 1 samples: u=1" in table
    assert "1.000e+00" in table
    assert table.splitlines()[-1] == "2 checks, 1 failed"


# ============== Property 22: 子命令与退出码 ==============
# **Feature: lvalue-verify, Property 22: 子命令与退出码**
# **Validates: cli.main**


def test_qexpand_default_rows(capsys: pytest.CaptureFixture[str]):
    """
    **Feature: lvalue-verify, Property 22: 子命令与退出码**

    qexpand 默认输出 [指数分子, 系数] 行数组。
    """
    assert main(["qexpand", "theta3(q)", "--order", "240"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == [[0, "1"], [24, "2"], [96, "2"], [216, "2"]]


def test_qexpand_json_wraps_rows(capsys: pytest.CaptureFixture[str]):
    assert main(["qexpand", "eta ( q^4 )^2*eta(q^8)^2", "--order", "240", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["expr"] == "eta(q^4)^2 * eta(q^8)^2"
    assert payload["order"] == 240
    assert payload["rows"][0] == [24, "1"]


def test_qexpand_syntax_error(capsys: pytest.CaptureFixture[str]):
    assert main(["qexpand", "eta(q"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_verify_named_check_json(capsys: pytest.CaptureFixture[str]):
    code = main(["verify", "--check", "qs_theta34", "--check", "qs_lambert", "--order", "1440", "--json"])
    assert code == EXIT_OK
    rows = json.loads(capsys.readouterr().out)
    assert [r["name"] for r in rows] == ["qs_lambert", "qs_theta34"]
    assert all(r["pass"] for r in rows)


def test_verify_empty_prefix_succeeds(capsys: pytest.CaptureFixture[str]):
    assert main(["verify", "--prefix", "zzz"]) == EXIT_OK
    assert "0 checks, 0 failed" in capsys.readouterr().out


def test_verify_failure_exit_code(capsys: pytest.CaptureFixture[str]):
    """容差压到极小时数值检查失败，退出码为 1"""
    assert main(["verify", "--check", "num_measure", "--tol", "1e-300"]) == EXIT_FAILED
    assert "1 failed" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["verify", "--check", "no_such_check"],
        ["verify", "--order", "250"],
        ["verify", "--check", "qs_lambert", "--prefix", "qs_"],
        ["lvalue", "--curve", "11"],
        ["hyp", "eval", "--params", "1,2,3"],
        ["hyp", "eval", "--params", "0.5,0.5,x,1.5,0.75"],
        ["hyp", "ftilde", "--alpha", "-1", "--beta", "0.5"],
    ],
)
def test_usage_errors(argv: list[str]):
    assert main(argv) == EXIT_USAGE


def test_lvalue_routes_agree(capsys: pytest.CaptureFixture[str]):
    assert main(["lvalue", "--curve", "32", "--method", "all", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [r["method"] for r in payload["results"]] == ["series", "theta_integral", "elementary"]
    assert payload["spread"] <= 1e-8


def test_hyp_eval_terminating(capsys: pytest.CaptureFixture[str]):
    assert main(["hyp", "eval", "--params", "0,0.5,1,1.5,2", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == 1.0
    assert payload["params"] == [0.0, 0.5, 1.0, 1.5, 2.0]


def test_hyp_ftilde_routes(capsys: pytest.CaptureFixture[str]):
    assert main(["hyp", "ftilde", "--alpha", "0.25", "--beta", "0.5", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["definition"] - payload["dixon"]) <= 1e-9


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "app.cli", "qexpand", "theta3(q)", "--order", "240"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == EXIT_OK
    assert proc.stdout.strip() == '[[0, "1"], [24, "2"], [96, "2"], [216, "2"]]'
