"""
编译求和内核

3F2(1) 的直接部分和需要 10^6 量级的项，纯 Python 循环太慢，
这里用 numba 编译累乘 + Neumaier 补偿求和。
"""

import numba
from numba import float64, int64
from numba.types import UniTuple


def _hyp3f2_partial_sum(
    a: float,
    b: float,
    c: float,
    e: float,
    f: float,
    n_terms: int,
) -> tuple[float, float, float]:
    """
    sum_{n=0}^{n_terms-1} t_n，t_0 = 1，t_{n+1} = t_n (a+n)(b+n)(c+n) / ((e+n)(f+n)(n+1))

    Returns:
        (部分和, 最后一项 t_{n_terms-1}, sum n |t_n|)；第三项用于累乘舍入误差上界
    """
    total = 1.0
    comp = 0.0
    term = 1.0
    weighted = 0.0
    for n in range(n_terms - 1):
        nf = float(n)
        term *= (a + nf) * (b + nf) * (c + nf) / ((e + nf) * (f + nf) * (nf + 1.0))
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        weighted += (nf + 1.0) * abs(term)
    return total + comp, term, weighted


hyp3f2_partial_sum = numba.njit(
    UniTuple(float64, 3)(float64, float64, float64, float64, float64, int64),
    cache=True,
    nogil=True,
)(_hyp3f2_partial_sum)
