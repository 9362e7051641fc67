"""Sturm 序列:開區間內相異實根的精確計數與隔離"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from ..errors import EndpointRoot
from ..models import AlphaPoly

Interval = Tuple[Fraction, Fraction]


def sturm_chain(p: AlphaPoly) -> List[AlphaPoly]:
    """
    p₀ = p, p₁ = p′, p_{i+1} = −rem(p_{i−1}, p_i),直到餘式為零

    每一項都取正倍數的互質整數形式 (primitive),符號變化數不受影響。
    """
    chain = [p.primitive(), p.derivative().primitive()]
    while not chain[-1].is_zero:
        _, remainder = chain[-2].divmod(chain[-1])
        if remainder.is_zero:
            break
        chain.append((-remainder).primitive())
    return [q for q in chain if not q.is_zero]


def sign_changes(values: Sequence[Fraction]) -> int:
    """忽略零的符號變化次數"""
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def _variations(chain: Sequence[AlphaPoly], x: Fraction) -> int:
    return sign_changes([q.sign_at(x) for q in chain])


def _as_interval(interval) -> Interval:
    lo, hi = (Fraction(v) if not isinstance(v, float) else Fraction(str(v)) for v in interval)
    if lo >= hi:
        raise ValueError(f"區間左端點必須小於右端點: ({lo}, {hi})")
    return lo, hi


def sturm_root_count(p: AlphaPoly, interval) -> int:
    """
    (lo, hi) 內相異實根個數

    先取無平方部分,再以 Sturm 定理 V(lo) − V(hi) 計數。

    Raises:
        ValueError: p 為零多項式或區間無效
        EndpointRoot: p(lo)·p(hi) = 0
    """
    if p.is_zero:
        raise ValueError("零多項式的根數沒有定義")
    lo, hi = _as_interval(interval)
    if p.evaluate(lo) == 0 or p.evaluate(hi) == 0:
        raise EndpointRoot(f"{p} 在區間端點 ({lo}, {hi}) 上為零")
    if p.is_constant:
        return 0
    chain = sturm_chain(p.square_free_part())
    return _variations(chain, lo) - _variations(chain, hi)


def isolate_roots(p: AlphaPoly, interval, width=Fraction(1, 10**6)) -> List[Interval]:
    """
    將 (lo, hi) 內每個實根隔離在寬度 ≤ width 的互斥有理區間中

    恰好落在二分點上的根以退化區間 (r, r) 表示。

    Raises:
        EndpointRoot: p 在原區間端點為零
    """
    lo, hi = _as_interval(interval)
    width = Fraction(width)
    if p.is_zero:
        raise ValueError("零多項式的根數沒有定義")
    if p.evaluate(lo) == 0 or p.evaluate(hi) == 0:
        raise EndpointRoot(f"{p} 在區間端點 ({lo}, {hi}) 上為零")
    if p.is_constant:
        return []

    square_free = p.square_free_part()
    chain = sturm_chain(square_free)

    def count(a: Fraction, b: Fraction) -> int:
        return _variations(chain, a) - _variations(chain, b)

    found: List[Interval] = []
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        if square_free.sign_at(mid) == 0:
            found.append((mid, mid))
            # 避開 mid 本身
            offset = min(width, (b - a) / 4) / 2
            left, right = mid - offset, mid + offset
            while square_free.sign_at(left) == 0 or square_free.sign_at(right) == 0 or count(left, right) != 1:
                offset /= 2
                left, right = mid - offset, mid + offset
            stack.append((right, b, count(right, b)))
            stack.append((a, left, count(a, left)))
            continue
        stack.append((mid, b, count(mid, b)))
        stack.append((a, mid, count(a, mid)))
    return sorted(found)
