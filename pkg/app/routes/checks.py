"""
Checks API Routes

处理检查相关的 HTTP 请求：
- GET /checks - 列出注册表
- POST /checks/run - 批量运行
- GET /checks/{name} - 运行单个检查
"""

import asyncio

from fastapi import APIRouter, Depends, Query

from app.config import Settings, get_settings
from app.schemas import (
    CheckListData,
    CheckListResponse,
    CheckReportResponse,
    CheckRunData,
    CheckRunRequest,
    CheckRunResponse,
    ErrorResponse,
)
from app.services import verify_service


router = APIRouter(prefix="/checks", tags=["checks"])


def get_verify_settings() -> Settings:
    """依赖注入：默认配置（测试中可覆盖）"""
    return get_settings()


@router.get("", response_model=CheckListResponse)
async def list_checks() -> CheckListResponse:
    """列出所有已注册检查（注册表顺序）"""
    return CheckListResponse(
        data=[
            CheckListData(name=spec.name, paper_location=spec.paper_location, depends_on=list(spec.depends_on))
            for spec in verify_service.select()
        ]
    )


@router.post(
    "/run",
    response_model=CheckRunResponse,
    responses={
        400: {"model": ErrorResponse, "description": "参数错误"},
        404: {"model": ErrorResponse, "description": "检查不存在"},
    },
)
async def run_checks(
    request: CheckRunRequest,
    settings: Settings = Depends(get_verify_settings),
) -> CheckRunResponse:
    """
    批量运行检查

    names / prefix 都未给出时运行全部；失败的检查不影响 HTTP 状态码，结果见 all_passed。
    """
    settings = settings.with_overrides(order24=request.order24, seed=request.seed)
    reports = await verify_service.run_all_async(
        settings, names=request.names, prefix=request.prefix, tolerance=request.tolerance
    )
    return CheckRunResponse(data=CheckRunData(all_passed=verify_service.all_passed(reports), reports=reports))


@router.get(
    "/{name}",
    response_model=CheckReportResponse,
    responses={404: {"model": ErrorResponse, "description": "检查不存在"}},
)
async def run_single_check(
    name: str,
    order24: int | None = Query(default=None, gt=0, multiple_of=24),
    tolerance: float | None = Query(default=None, gt=0),
    settings: Settings = Depends(get_verify_settings),
) -> CheckReportResponse:
    """运行单个检查（依赖项一并运行以判定状态）"""
    verify_service.get_spec(name)
    settings = settings.with_overrides(order24=order24)
    report = await asyncio.to_thread(verify_service.run_check, name, settings, tolerance)
    return CheckReportResponse(data=report)
