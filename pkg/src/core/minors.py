"""AlphaPoly 矩陣的免分數 (Bareiss) 消去與順序主子式"""

import math
from typing import List

from ..models import AlphaPoly, PolyMatrix


def bareiss_determinant(m: PolyMatrix) -> AlphaPoly:
    """
    帶列交換的 Bareiss 行列式

    每一步的除法都是整除,中間結果維持為多項式。
    """
    n = m.size
    rows = [list(row) for row in m.entries]
    sign = 1
    previous = AlphaPoly.one()
    for k in range(n - 1):
        if rows[k][k].is_zero:
            for i in range(k + 1, n):
                if not rows[i][k].is_zero:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return AlphaPoly.zero()
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (pivot * rows[i][j] - rows[i][k] * rows[k][j]).exact_div(previous)
            rows[i][k] = AlphaPoly.zero()
        previous = pivot
    return rows[n - 1][n - 1] * sign


def principal_minors(m: PolyMatrix) -> List[AlphaPoly]:
    """
    1..n 階順序主子式

    一次 Bareiss 消去中,第 k 個主元就是第 k+1 階順序主子式;
    若某主元恆為零,之後的子式改以帶列交換的行列式逐一計算。
    矩陣先乘上所有分母的最小公倍數 D,在整數係數上消去,第 k 階子式再除以 D^k。
    """
    scale = _common_denominator(m)
    if scale > 1:
        scaled = PolyMatrix.from_rows([[entry * scale for entry in row] for row in m.entries])
        return [minor / scale ** (k + 1) for k, minor in enumerate(principal_minors(scaled))]
    n = m.size
    rows = [list(row) for row in m.entries]
    minors = [rows[0][0]]
    previous = AlphaPoly.one()
    for k in range(n - 1):
        pivot = rows[k][k]
        if pivot.is_zero:
            minors.extend(bareiss_determinant(m.submatrix(range(size))) for size in range(k + 2, n + 1))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (pivot * rows[i][j] - rows[i][k] * rows[k][j]).exact_div(previous)
        previous = pivot
        minors.append(rows[k + 1][k + 1])
    return minors


def _common_denominator(m: PolyMatrix) -> int:
    lcm = 1
    for row in m.entries:
        for entry in row:
            d = entry.content_denominator()
            lcm = lcm * d // math.gcd(lcm, d)
    return lcm

