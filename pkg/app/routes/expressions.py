"""
Expressions API Routes

- POST /qexpand - 展开 eta/theta 表达式
- POST /hyp/eval - 3F2[a, b, c; e, f | 1]
- GET /hyp/ftilde - F~(alpha, beta)，定义式与 Dixon 形式各算一次
"""

import asyncio

from fastapi import APIRouter, Query

from app.infra.specfun import ftilde, ftilde_via_dixon, hyp3f2_unit
from app.schemas import (
    ErrorResponse,
    FtildeData,
    FtildeParams,
    FtildeResponse,
    HypEvalRequest,
    HypValueResponse,
    QExpandData,
    QExpandRequest,
    QExpandResponse,
)
from app.services.qexpr import eval_expr, parse, to_text


router = APIRouter(tags=["expressions"])


@router.post(
    "/qexpand",
    response_model=QExpandResponse,
    responses={400: {"model": ErrorResponse, "description": "表达式错误"}},
)
async def qexpand(request: QExpandRequest) -> QExpandResponse:
    """表达式展开为精确系数表，expr 返回规范化文本"""
    ast = parse(request.expr)
    series = await asyncio.to_thread(eval_expr, ast, request.order)
    rows = [(e, str(c)) for e, c in series.coeffs.items()]
    return QExpandResponse(data=QExpandData(expr=to_text(ast), order=request.order, rows=rows))


@router.post(
    "/hyp/eval",
    response_model=HypValueResponse,
    responses={400: {"model": ErrorResponse, "description": "级数发散或参数在极点上"}},
)
async def hyp_eval(request: HypEvalRequest) -> HypValueResponse:
    result = await asyncio.to_thread(hyp3f2_unit, request.params)
    return HypValueResponse(data=result)


@router.get("/hyp/ftilde", response_model=FtildeResponse)
async def hyp_ftilde(
    alpha: float = Query(..., gt=0),
    beta: float = Query(..., gt=0),
) -> FtildeResponse:
    q = FtildeParams(alpha=alpha, beta=beta)
    definition = await asyncio.to_thread(ftilde, q)
    dixon = await asyncio.to_thread(ftilde_via_dixon, q)
    return FtildeResponse(data=FtildeData(alpha=alpha, beta=beta, definition=definition, dixon=dixon))
