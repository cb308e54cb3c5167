"""
检查注册表与执行

- run_check: 运行单个检查（含依赖状态传播）
- run_all_async / run_all: 按注册表顺序收集报告，可并行执行
"""

import asyncio
import logging
import time

from app.config import Settings, get_settings
from app.infra.errors import UnknownCheckError
from app.models import CheckStatus
from app.schemas import CheckReport
from app.services import checks_exact, checks_numeric, checks_theorem
from app.services.checks_base import CheckContext, CheckSpec

logger = logging.getLogger(__name__)

REGISTRY: dict[str, CheckSpec] = {
    spec.name: spec
    for spec in (*checks_exact.CHECKS, *checks_numeric.CHECKS, *checks_theorem.CHECKS)
}

_FAILED = (CheckStatus.FAIL, CheckStatus.ERROR)


def check_names() -> list[str]:
    return list(REGISTRY)


def get_spec(name: str) -> CheckSpec:
    """
    Raises:
        UnknownCheckError: 名称不在注册表中
    """
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownCheckError(name) from None


def select(names: list[str] | None = None, prefix: str | None = None) -> list[CheckSpec]:
    """按名称列表或前缀筛选，保持注册表顺序；都不给时返回全部"""
    if names is not None:
        wanted = {get_spec(n).name for n in names}
        return [spec for spec in REGISTRY.values() if spec.name in wanted]
    if prefix is not None:
        return [spec for spec in REGISTRY.values() if spec.name.startswith(prefix)]
    return list(REGISTRY.values())


def _execute(spec: CheckSpec, ctx: CheckContext) -> CheckReport:
    """运行一个检查；异常转为 error 状态的报告，不中断整体运行"""
    logger.info(f"check {spec.name} started")
    start = time.perf_counter()
    try:
        report = spec.runner(ctx)
    except Exception as e:
        logger.exception(f"check {spec.name} crashed: {e}")
        report = CheckReport(
            name=spec.name,
            lhs="n/a",
            rhs="n/a",
            passed=False,
            paper_location=spec.paper_location,
            status=CheckStatus.ERROR,
            detail=str(e),
        )
    report.runtime_ms = (time.perf_counter() - start) * 1000.0
    report.depends_on = list(spec.depends_on)
    logger.info(f"check {spec.name} finished: {report.status.value} in {report.runtime_ms:.1f} ms")
    return report


def _apply_dependencies(report: CheckReport, statuses: dict[str, CheckStatus]) -> CheckReport:
    failed = [dep for dep in report.depends_on if statuses.get(dep) in _FAILED]
    if failed and report.status not in _FAILED:
        logger.warning(f"check {report.name} forced to fail: dependency {', '.join(failed)} failed")
        report.passed = False
        report.status = CheckStatus.FAIL
        note = f"dependency {', '.join(failed)} failed"
        report.detail = f"{report.detail}; {note}" if report.detail else note
    return report


def _context(settings: Settings | None, tolerance: float | None) -> CheckContext:
    return CheckContext(settings=settings or get_settings(), tolerance=tolerance)


def run_check(name: str, settings: Settings | None = None, tolerance: float | None = None) -> CheckReport:
    """
    运行单个检查

    Raises:
        UnknownCheckError: 名称不在注册表中
    """
    spec = get_spec(name)
    ctx = _context(settings, tolerance)
    report = _execute(spec, ctx)
    statuses = {dep: _execute(get_spec(dep), ctx).status for dep in spec.depends_on}
    return _apply_dependencies(report, statuses)


async def run_all_async(
    settings: Settings | None = None,
    names: list[str] | None = None,
    prefix: str | None = None,
    tolerance: float | None = None,
) -> list[CheckReport]:
    """
    并行运行所选检查（并发度 settings.parallelism），报告按注册表顺序返回

    所选集合之外的依赖会被隐式运行，只用于判定依赖状态。
    """
    ctx = _context(settings, tolerance)
    specs = select(names, prefix)
    selected = {spec.name for spec in specs}
    implicit = [
        get_spec(dep)
        for dep in dict.fromkeys(dep for spec in specs for dep in spec.depends_on)
        if dep not in selected
    ]
    semaphore = asyncio.Semaphore(ctx.settings.parallelism)

    async def guarded(spec: CheckSpec) -> CheckReport:
        async with semaphore:
            return await asyncio.to_thread(_execute, spec, ctx)

    results = await asyncio.gather(*(guarded(spec) for spec in [*specs, *implicit]))
    statuses = {r.name: r.status for r in results}
    reports = [_apply_dependencies(r, statuses) for r in results[: len(specs)]]
    logger.info(f"ran {len(reports)} checks ({len(implicit)} implicit dependencies)")
    return reports


def run_all(
    settings: Settings | None = None,
    names: list[str] | None = None,
    prefix: str | None = None,
    tolerance: float | None = None,
) -> list[CheckReport]:
    """run_all_async 的同步入口"""
    return asyncio.run(run_all_async(settings, names=names, prefix=prefix, tolerance=tolerance))


def all_passed(reports: list[CheckReport]) -> bool:
    """聚合状态：没有 fail / error 即成功（nonpositive 不计为失败；空列表为成功）"""
    return not any(r.status in _FAILED for r in reports)
