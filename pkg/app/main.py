"""
FastAPI 应用入口

配置 FastAPI 应用，注册路由与异常处理。
"""

import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.infra.errors import UnknownCheckError, UnknownCurveError, VerifyError
from app.routes import checks_router, expressions_router, lvalues_router

logger = logging.getLogger(__name__)

# 响应码：0 成功，1001 参数 / 定义域错误，1003 资源不存在，1004 内部错误
CODE_BAD_REQUEST = 1001
CODE_NOT_FOUND = 1003
CODE_INTERNAL = 1004


def create_app() -> FastAPI:
    """
    创建 FastAPI 应用实例

    Returns:
        FastAPI: 配置完成的应用实例
    """
    app = FastAPI(
        title="lvalue-verify",
        description="eta/theta 恒等式与 L(E_N, 2) 的 3F2 闭式验证服务。",
        version="1.0.0",
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    app.include_router(checks_router)
    app.include_router(lvalues_router)
    app.include_router(expressions_router)

    @app.exception_handler(VerifyError)
    async def verify_error_handler(request: Request, exc: VerifyError) -> JSONResponse:
        """验证引擎错误：未知检查 / 曲线为 404，其余为 400"""
        not_found = isinstance(exc, (UnknownCheckError, UnknownCurveError))
        logger.info(f"{request.method} {request.url.path} rejected: {exc}")
        return JSONResponse(
            status_code=404 if not_found else 400,
            content={"code": CODE_NOT_FOUND if not_found else CODE_BAD_REQUEST, "msg": str(exc), "data": None},
        )

    @app.exception_handler(Exception)
    async def global_exception_handler(request: Request, exc: Exception) -> JSONResponse:
        """全局异常处理器"""
        logger.exception(f"{request.method} {request.url.path} failed: {exc}")
        return JSONResponse(
            status_code=500,
            content={"code": CODE_INTERNAL, "msg": f"内部错误: {exc}", "data": None},
        )

    @app.get("/health", tags=["health"])
    async def health_check() -> dict:
        """健康检查"""
        return {"status": "healthy"}

    return app


app = create_app()
