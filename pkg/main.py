"""
lvalue-verify HTTP 服务启动脚本

使用 uvicorn 启动 FastAPI 应用；命令行验证请使用 `lvalue-verify`（app.cli）。
"""

import uvicorn

from app.main import app  # noqa: F401


def main() -> None:
    """启动应用"""
    uvicorn.run(
        "main:app",
        host="0.0.0.0",
        port=8000,
        log_level="info",
    )


if __name__ == "__main__":
    main()
