"""
实 nome 上的 theta / eta 浮点求值

所有函数以 log q（< 0）为输入，支持 numpy 数组广播。
theta2 取因子化形式 log theta2(q) = log 2 + (log q)/4 + log1p(sum_{n>=1} q^{n(n+1)})，
在 q -> 0 时不丢失相对精度。
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.infra.errors import DomainError

LN2 = math.log(2.0)

# q^{n^2} < e^{-40} 的项相对主项可忽略
_CUTOFF = 40.0


def _as_log_nome(log_q: ArrayLike) -> NDArray[np.float64]:
    lq = np.asarray(log_q, dtype=np.float64)
    if np.any(~(lq < 0)):
        raise DomainError("log q must be negative (0 < q < 1)")
    return lq


def _index(lq: NDArray[np.float64], power: float) -> NDArray[np.float64]:
    """足够多的 n：n^power |log q| 超过截断阈值"""
    n_max = int((_CUTOFF / float(np.min(-lq))) ** (1.0 / power)) + 2
    return np.arange(1, n_max + 1, dtype=np.float64)


def theta3_tail(log_q: ArrayLike) -> NDArray[np.float64]:
    """sum_{n>=1} q^{n^2}"""
    lq = _as_log_nome(log_q)
    n = _index(lq, 2.0)
    return np.exp(lq[..., None] * n * n).sum(axis=-1)


def theta4_tail(log_q: ArrayLike) -> NDArray[np.float64]:
    """sum_{n>=1} (-1)^n q^{n^2}"""
    lq = _as_log_nome(log_q)
    n = _index(lq, 2.0)
    sign = np.where(n % 2 == 1, -1.0, 1.0)
    return (sign * np.exp(lq[..., None] * n * n)).sum(axis=-1)


def theta2_tail(log_q: ArrayLike) -> NDArray[np.float64]:
    """sum_{n>=1} q^{n(n+1)}"""
    lq = _as_log_nome(log_q)
    n = _index(lq, 2.0)
    return np.exp(lq[..., None] * n * (n + 1)).sum(axis=-1)


def log_theta2(log_q: ArrayLike) -> NDArray[np.float64]:
    lq = _as_log_nome(log_q)
    return LN2 + lq / 4.0 + np.log1p(theta2_tail(lq))


def log_theta3(log_q: ArrayLike) -> NDArray[np.float64]:
    return np.log1p(2.0 * theta3_tail(log_q))


def log_theta4(log_q: ArrayLike) -> NDArray[np.float64]:
    return np.log1p(2.0 * theta4_tail(log_q))


def theta2(log_q: ArrayLike) -> NDArray[np.float64]:
    return np.exp(log_theta2(log_q))


def theta3(log_q: ArrayLike) -> NDArray[np.float64]:
    return 1.0 + 2.0 * theta3_tail(log_q)


def theta4(log_q: ArrayLike) -> NDArray[np.float64]:
    return 1.0 + 2.0 * theta4_tail(log_q)


def log_eta(log_q: ArrayLike) -> NDArray[np.float64]:
    """log eta(q) = (log q)/24 + sum_{n>=1} log1p(-q^n)"""
    lq = _as_log_nome(log_q)
    n = _index(lq, 1.0)
    return lq / 24.0 + np.log1p(-np.exp(lq[..., None] * n)).sum(axis=-1)


def eta(log_q: ArrayLike) -> NDArray[np.float64]:
    return np.exp(log_eta(log_q))
