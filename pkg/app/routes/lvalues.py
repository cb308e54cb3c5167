"""
L-values API Routes

- GET /lvalues/{curve} - 按一种或全部可用路线计算 L(E_N, 2)
"""

import asyncio

from fastapi import APIRouter, Depends

from app.config import Settings
from app.models import LValueMethod
from app.routes.checks import get_verify_settings
from app.schemas import ErrorResponse, LValueResponse
from app.services.curves import get_curve
from app.services.lseries import compute_lvalue


router = APIRouter(prefix="/lvalues", tags=["lvalues"])

# theta 积分与 x 积分只对 32、64 给出
_AVAILABLE = {
    27: (LValueMethod.SERIES,),
    32: tuple(LValueMethod),
    64: tuple(LValueMethod),
}


@router.get(
    "/{curve}",
    response_model=LValueResponse,
    responses={
        400: {"model": ErrorResponse, "description": "路线不适用于该曲线"},
        404: {"model": ErrorResponse, "description": "曲线不存在"},
    },
)
async def get_lvalue(
    curve: int,
    method: LValueMethod | None = None,
    settings: Settings = Depends(get_verify_settings),
) -> LValueResponse:
    """
    计算 L(E_N, 2)

    Args:
        curve: 导子 N（27 / 32 / 64）
        method: 路线；省略时返回该曲线所有可用路线
    """
    spec = get_curve(curve)
    methods = (method,) if method is not None else _AVAILABLE[curve]
    results = [await asyncio.to_thread(compute_lvalue, spec, m, settings) for m in methods]
    return LValueResponse(data=results)
