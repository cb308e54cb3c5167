"""
属性测试：API Routes 层

使用 hypothesis 进行属性测试，验证 HTTP 接口的响应结构与错误码。
"""

import pytest
from fastapi.testclient import TestClient
from httpx import ASGITransport, AsyncClient
from hypothesis import given, settings, strategies as st

from app.config import Settings
from app.main import CODE_BAD_REQUEST, CODE_NOT_FOUND, create_app
from app.routes.checks import get_verify_settings
from app.services import verify_service


# ============== 测试应用设置 ==============

def create_test_app():
    """创建测试用应用：精确检查截断降到 q^60"""
    app = create_app()
    app.dependency_overrides[get_verify_settings] = lambda: Settings(order24=24 * 60)
    return app


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(create_test_app())


# ============== Property 23: 检查接口 ==============
# **Feature: lvalue-verify, Property 23: 检查接口**
# **Validates: GET /checks, GET /checks/{name}, POST /checks/run**


def test_health(client: TestClient):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


def test_list_checks_in_registry_order(client: TestClient):
    body = client.get("/checks").json()
    assert body["code"] == 0
    names = [item["name"] for item in body["data"]]
    assert names == verify_service.check_names()
    final = next(item for item in body["data"] if item["name"] == "reg_final_32")
    assert final["depends_on"] == ["thm_L32"]


@settings(max_examples=5, deadline=None)
@given(name=st.sampled_from(["qs_etatotheta", "qs_theta34", "qs_lambert", "qs_theta_iq", "qs_triple_product"]))
def test_single_exact_check(client: TestClient, name: str):
    """
    **Feature: lvalue-verify, Property 23: 检查接口**

    *For any* 精确检查，GET /checks/{name} SHALL 返回通过的报告，字段 'pass' 使用别名。
    """
    response = client.get(f"/checks/{name}")
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["name"] == name
    assert data["pass"] is True
    assert data["lhs"] == "exact"


def test_unknown_check_is_404(client: TestClient):
    response = client.get("/checks/no_such_check")
    assert response.status_code == 404
    body = response.json()
    assert body["code"] == CODE_NOT_FOUND
    assert body["data"] is None
    assert "no_such_check" in body["msg"]


def test_order_must_be_multiple_of_24(client: TestClient):
    assert client.get("/checks/qs_lambert", params={"order24": 250}).status_code == 422


def test_run_by_prefix(client: TestClient):
    response = client.post("/checks/run", json={"prefix": "qs_theta"})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["all_passed"] is True
    assert [r["name"] for r in data["reports"]] == [n for n in verify_service.check_names() if n.startswith("qs_theta")]


def test_run_rejects_conflicting_selector(client: TestClient):
    response = client.post("/checks/run", json={"names": ["qs_lambert"], "prefix": "qs_"})
    assert response.status_code == 422


# ============== Property 24: 表达式与超几何接口 ==============
# **Feature: lvalue-verify, Property 24: 表达式与超几何接口**
# **Validates: POST /qexpand, POST /hyp/eval, GET /hyp/ftilde**


def test_qexpand(client: TestClient):
    response = client.post("/qexpand", json={"expr": "theta3( q )", "order": 240})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["expr"] == "theta3(q)"
    assert data["rows"] == [[0, "1"], [24, "2"], [96, "2"], [216, "2"]]


@pytest.mark.parametrize("expr", ["eta(q", "zeta(q)", "eta(q^0)"])
def test_qexpand_bad_expression(client: TestClient, expr: str):
    response = client.post("/qexpand", json={"expr": expr})
    assert response.status_code == 400
    assert response.json()["code"] == CODE_BAD_REQUEST
    assert response.json()["data"] is None


def test_hyp_eval(client: TestClient):
    params = {"a": 0.0, "b": 0.5, "c": 1.0, "e": 1.5, "f": 2.0}
    response = client.post("/hyp/eval", json={"params": params})
    assert response.status_code == 200
    assert response.json()["data"]["value"] == 1.0


def test_hyp_eval_divergent(client: TestClient):
    params = {"a": 1.0, "b": 1.0, "c": 1.0, "e": 1.5, "f": 1.5}
    response = client.post("/hyp/eval", json={"params": params})
    assert response.status_code == 400
    assert response.json()["code"] == CODE_BAD_REQUEST


def test_hyp_ftilde(client: TestClient):
    response = client.get("/hyp/ftilde", params={"alpha": 1 / 3, "beta": 1 / 3})
    assert response.status_code == 200
    data = response.json()["data"]
    assert abs(data["definition"] - data["dixon"]) <= 1e-9
    assert client.get("/hyp/ftilde", params={"alpha": 0, "beta": 1}).status_code == 422


# ============== Property 25: L 值接口 ==============
# **Feature: lvalue-verify, Property 25: L 值接口**
# **Validates: GET /lvalues/{curve}**


def test_unknown_curve_is_404(client: TestClient):
    response = client.get("/lvalues/99")
    assert response.status_code == 404
    assert response.json()["code"] == CODE_NOT_FOUND


def test_lvalue_27_series_only(client: TestClient):
    response = client.get("/lvalues/27")
    assert response.status_code == 200
    results = response.json()["data"]
    assert [r["method"] for r in results] == ["series"]
    assert client.get("/lvalues/27", params={"method": "theta_integral"}).status_code == 400


@pytest.mark.asyncio
async def test_lvalue_routes_agree_async():
    """
    **Feature: lvalue-verify, Property 25: L 值接口**

    N = 64 的三条路线 SHALL 在 1e-8 内一致。
    """
    async with AsyncClient(transport=ASGITransport(app=create_test_app()), base_url="http://test") as ac:
        response = await ac.get("/lvalues/64")
    assert response.status_code == 200
    values = [r["value"] for r in response.json()["data"]]
    assert len(values) == 3
    assert max(values) - min(values) <= 1e-8
