"""
API Routes

导出所有 API 路由模块。
"""

from app.routes.checks import router as checks_router
from app.routes.expressions import router as expressions_router
from app.routes.lvalues import router as lvalues_router

__all__ = ["checks_router", "expressions_router", "lvalues_router"]
