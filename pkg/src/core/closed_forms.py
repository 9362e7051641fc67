"""
低階問題的解析 Gram 解

這些解都是秩一 (或秩一加對角) 的平方和分解,可用來檢查自動產生的匹配方程。
"""

import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from ..models import EntropyKind, FeasiblePoint, GramProblem, entry_name
from .gram_builder import (
    build_gram_problem,
    concavity_gram_problem,
    default_gram_basis,
    numeric_residual,
)
from .heat_calculus import entropy_derivative

SQRT6 = math.sqrt(6.0)
SQRT2 = math.sqrt(2.0)
# 第三階逐點平方和分解有效的右端點 (5 − 2√2)/3
RENYI3_CASE1_UPPER = (5 - 2 * SQRT2) / 3
# 熵冪凹性的解析解有效的右端點 3/2 + √2
CONCAVITY_UPPER = 1.5 + SQRT2


def _sqrt(value: float, what: str) -> float:
    if value < -1e-12:
        raise ValueError(f"{what} 為負 ({value:.3e}),解析解在此 α 不是實數")
    return math.sqrt(max(value, 0.0))


def _point(problem: GramProblem, alpha: float, gram: np.ndarray, slacks: Dict[str, float]) -> FeasiblePoint:
    n = gram.shape[0]
    values = {entry_name(i, j): float(gram[i, j]) for i in range(n) for j in range(i, n)}
    values.update(slacks)
    margin = float(np.linalg.eigvalsh(gram).min())
    return FeasiblePoint(alpha, gram, slacks, margin, numeric_residual(problem, alpha, values))


def renyi2_vector(alpha: float) -> Tuple[float, float, float]:
    """
    k=2 Rényi 的 (a, b, c),使 −(12/α)h'' = E_α[(a p̄₂ + b p̄₁² + c E[p̄₁²])²]

    Raises:
        ValueError: α 不在 (0, 3]
    """
    if not 0 < alpha <= 3:
        raise ValueError(f"k=2 解析解只在 0 < α ≤ 3 有效: {alpha}")
    a = -SQRT6
    b = SQRT6 * (1 - alpha / 3) + _sqrt(alpha * (1 - alpha / 3), "α(1 − α/3)")
    shift = b - (alpha - 1) * a
    c = -shift + _sqrt(shift * shift - 3 * alpha * (alpha - 1), "c 的判別式")
    return a, b, c


def renyi2_closed_form(alpha: float, problem: Optional[GramProblem] = None) -> FeasiblePoint:
    """k=2 Rényi 的秩一 Gram 矩陣"""
    problem = problem or build_gram_problem(
        entropy_derivative(EntropyKind.RENYI, 2), default_gram_basis(2, EntropyKind.RENYI)
    )
    v = np.array(renyi2_vector(alpha))
    return _point(problem, alpha, np.outer(v, v), {})


def renyi3_case1_window(alpha: float) -> Optional[Tuple[float, float]]:
    """
    使 k=3 逐點平方和分解成立的自由參數 d 區間

    回傳 None 表示此 α 沒有可行的 d (例如 α 小於 9x³ − 12x² + 29x − 10 的實根)。
    """
    a2 = alpha * alpha
    if -9 * a2 * a2 + 30 * a2 * alpha - 53 * a2 + 68 * alpha - 20 < 0:
        return None
    bound = math.sqrt(3.0) * alpha * abs(alpha - 1)
    lo = max(-bound, (9 * a2 - 9 * alpha) / (2 * SQRT6))
    hi = bound
    # 9α⁴ − 54α³ + 99α² − 54α − √6·d·(3α² − 13α + 14) ≥ 0
    slope = SQRT6 * (3 * a2 - 13 * alpha + 14)
    constant = 9 * a2 * a2 - 54 * a2 * alpha + 99 * a2 - 54 * alpha
    if slope > 0:
        hi = min(hi, constant / slope)
    elif slope < 0:
        lo = max(lo, constant / slope)
    elif constant < 0:
        return None
    if lo > hi:
        return None
    return lo, hi


def renyi3_case1_closed_form(
    alpha: float,
    d: Optional[float] = None,
    problem: Optional[GramProblem] = None,
) -> FeasiblePoint:
    """
    k=3 Rényi 的逐點平方和分解

    Gram = vvᵀ + diag(0, 0, e², g²),v = (a, b, c, d);鬆弛係數 d = f²、e = h²。

    Args:
        alpha: α
        d: 自由參數;None 時取可行區間中點

    Raises:
        ValueError: 此 α 沒有可行的 d,或給定的 d 不可行
    """
    window = renyi3_case1_window(alpha)
    if window is None:
        raise ValueError(f"α = {alpha} 沒有可行的 d")
    if d is None:
        d = (window[0] + window[1]) / 2
    elif not window[0] - 1e-12 <= d <= window[1] + 1e-12:
        raise ValueError(f"d = {d} 不在可行區間 {window}")

    a2 = alpha * alpha
    a = SQRT6
    b = SQRT6 * alpha - 2 * SQRT6
    c = (3 * SQRT6 * a2 - 13 * SQRT6 * alpha + 14 * SQRT6) / 12
    e_sq = (-9 * a2 * a2 + 30 * a2 * alpha - 53 * a2 + 68 * alpha - 20) / 120
    f_sq = (
        9 * a2 * a2 - 54 * a2 * alpha + 99 * a2 - 54 * alpha
        - SQRT6 * d * (3 * a2 - 13 * alpha + 14)
    ) / 6
    g_sq = 3 * a2 * a2 - 6 * a2 * alpha + 3 * a2 - d * d
    h_sq = -9 * a2 + 9 * alpha + 2 * SQRT6 * d

    v = np.array([a, b, c, d])
    gram = np.outer(v, v) + np.diag([0.0, 0.0, max(e_sq, 0.0), max(g_sq, 0.0)])
    slacks = {"d": max(f_sq, 0.0), "e": max(h_sq, 0.0)}
    problem = problem or build_gram_problem(
        entropy_derivative(EntropyKind.RENYI, 3), default_gram_basis(3, EntropyKind.RENYI)
    )
    return _point(problem, alpha, gram, slacks)


def concavity_vector(alpha: float) -> Tuple[float, float, float]:
    """
    N_α^{1/2} 凹性的 (a, b, c):−(1/α)(h'' + (h')²) = E_α[(a p̄₂ + b p̄₁² + c E[p̄₁²])²]

    Raises:
        ValueError: α 不在 (0, 3/2 + √2]
    """
    if not 0 < alpha <= CONCAVITY_UPPER + 1e-12:
        raise ValueError(f"熵冪凹性解析解只在 0 < α ≤ 3/2 + √2 有效: {alpha}")
    root = _sqrt(3 * alpha - alpha * alpha, "3α − α²")
    a = 1 / SQRT2
    b = (-3 * SQRT2 + SQRT2 * alpha - root) / 6
    inner = _sqrt(3 * alpha - 2 * alpha * alpha + 4 * SQRT2 * alpha * root, "c 的根號")
    c = (2 * SQRT2 * alpha + root + inner) / 6
    return a, b, c


def concavity_closed_form(alpha: float, problem: Optional[GramProblem] = None) -> FeasiblePoint:
    """β = 1/2 時的秩一 Gram 矩陣"""
    problem = problem or concavity_gram_problem(Fraction(1, 2))
    v = np.array(concavity_vector(alpha))
    return _point(problem, alpha, np.outer(v, v), {})
