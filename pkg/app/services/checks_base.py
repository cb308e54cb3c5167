"""
检查的公共结构：运行上下文、注册项、报告构造
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from app.config import Settings
from app.infra.qseries import FormalSeries, identity_equal
from app.models import CheckStatus
from app.schemas import CheckReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckContext:
    """
    一次运行的配置

    Attributes:
        settings: 默认参数
        tolerance: 覆盖所有数值检查容差（None 表示使用各族默认值）
    """
    settings: Settings
    tolerance: float | None = None

    def tol(self, field: str) -> float:
        return self.tolerance if self.tolerance is not None else getattr(self.settings, field)

    def extra_samples(self, low: float, high: float, count: int = 2) -> list[float]:
        """--seed 给定时在 [low, high] 追加的随机采样点"""
        if self.settings.seed is None:
            return []
        rng = np.random.default_rng(self.settings.seed)
        return [float(v) for v in rng.uniform(low, high, size=count)]


@dataclass(frozen=True)
class CheckSpec:
    """注册表条目"""
    name: str
    paper_location: str
    runner: Callable[[CheckContext], CheckReport]
    depends_on: tuple[str, ...] = ()


# ============== 报告构造 ==============

def exact_report(
    spec_name: str,
    location: str,
    pairs: Sequence[tuple[str, FormalSeries, FormalSeries]],
    through24: int,
) -> CheckReport:
    """逐对精确比较；第一处不一致即失败，detail 给出恒等式标签与指数分子"""
    for label, lhs, rhs in pairs:
        ok, mismatch = identity_equal(lhs, rhs, through24)
        if not ok:
            logger.warning(f"{spec_name}: '{label}' differs at numerator {mismatch}")
            return CheckReport(
                name=spec_name,
                lhs="exact",
                rhs="exact",
                tolerance=0.0,
                passed=False,
                paper_location=location,
                status=CheckStatus.FAIL,
                detail=f"{label}: first mismatch at exponent numerator {mismatch} (q^{mismatch}/24)",
            )
    return CheckReport(
        name=spec_name,
        lhs="exact",
        rhs="exact",
        tolerance=0.0,
        passed=True,
        paper_location=location,
        status=CheckStatus.PASS,
        detail=f"{len(pairs)} identities through numerator {through24}",
    )


@dataclass(frozen=True)
class Sample:
    """数值检查的一个采样"""
    label: str
    lhs: float
    rhs: float

    @property
    def abs_err(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.rhs) if self.rhs != 0 else self.abs_err


def numeric_report(
    spec_name: str,
    location: str,
    samples: Sequence[Sample],
    tolerance: float,
    relative: bool = False,
) -> CheckReport:
    """
    取最差采样生成报告

    relative=False 时 pass <=> abs_err <= tolerance；relative=True 时按 rel_err 判定。
    """
    key = (lambda s: s.rel_err) if relative else (lambda s: s.abs_err)
    worst = max(samples, key=key)
    measured = key(worst)
    passed = bool(math.isfinite(measured) and measured <= tolerance)
    if not passed:
        logger.warning(f"{spec_name}: {worst.label} error {measured:.3e} exceeds {tolerance:.3e}")
    return CheckReport(
        name=spec_name,
        lhs=worst.lhs,
        rhs=worst.rhs,
        abs_err=worst.abs_err,
        rel_err=worst.rel_err,
        tolerance=tolerance,
        passed=passed,
        paper_location=location,
        status=CheckStatus.PASS if passed else CheckStatus.FAIL,
        detail=f"worst of {len(samples)} samples: {worst.label}",
    )
