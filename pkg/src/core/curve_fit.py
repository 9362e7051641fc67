"""參數曲線的最小平方擬合與有理化"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..models import AlphaPoly, FittedParams

logger = logging.getLogger(__name__)

Sample = Tuple[float, float]


def round_to_denominator(value: float, denominator: int) -> Fraction:
    """四捨五入到最接近的 k/denominator"""
    return Fraction(int(np.rint(value * denominator)), denominator)


def _merge(samples: Sequence[Sample], anchors: Sequence[Sample]) -> List[Sample]:
    """錨點加入樣本;同一 α 已有樣本時以錨點的值取代"""
    merged = {x: y for x, y in samples}
    for x, y in anchors:
        key = next((s for s in merged if abs(s - x) < 1e-12), float(x))
        merged[key] = float(y)
    return sorted(merged.items())


def _constrained_least_squares(xs: np.ndarray, ys: np.ndarray, degree: int, anchors: Sequence[Sample]) -> np.ndarray:
    # 帶等式限制的最小平方:KKT 系統
    vander = P.polyvander(xs, degree)
    constraint = P.polyvander(np.array([x for x, _ in anchors], dtype=float), degree)
    targets = np.array([y for _, y in anchors], dtype=float)
    n = degree + 1
    m = len(anchors)
    kkt = np.zeros((n + m, n + m))
    kkt[:n, :n] = 2 * vander.T @ vander
    kkt[:n, n:] = constraint.T
    kkt[n:, :n] = constraint
    rhs = np.concatenate([2 * vander.T @ ys, targets])
    solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    return solution[:n]


def fit_samples(
    points: Iterable[Sample],
    degree: int,
    denominator: int,
    pinned: Sequence[Sample] = (),
    exact: bool = False,
) -> AlphaPoly:
    """
    以 degree 次多項式擬合 (α, 值) 點,係數取到 1/denominator

    Args:
        points: 樣本點
        degree: 擬合次數
        denominator: 有理化分母
        pinned: 已知的點 (例如矩陣在端點的已知值),預設當作一般樣本加入
        exact: True 時 pinned 改為必須精確通過的等式限制

    Raises:
        ValueError: 點數不足 degree + 1 或分母不為正
    """
    samples = sorted((float(x), float(y)) for x, y in points)
    if denominator < 1:
        raise ValueError(f"分母必須為正整數: {denominator}")
    if pinned and not exact:
        samples = _merge(samples, pinned)
    if len(samples) < degree + 1:
        raise ValueError(f"{degree} 次擬合至少需要 {degree + 1} 個點,只有 {len(samples)} 個")
    xs = np.array([x for x, _ in samples])
    ys = np.array([y for _, y in samples])
    if exact and pinned:
        coeffs = _constrained_least_squares(xs, ys, degree, pinned)
    else:
        coeffs = P.polyfit(xs, ys, degree)
    return AlphaPoly(tuple(round_to_denominator(c, denominator) for c in coeffs))


def fit_parameter_table(
    table: Dict[str, Sequence[Sample]],
    degree: int,
    denominator: int,
    pinned: Optional[Dict[str, Sequence[Sample]]] = None,
    exact: bool = False,
) -> FittedParams:
    """每個自由參數各自擬合,依名稱順序組成 FittedParams"""
    params = {}
    grid: Tuple[float, ...] = ()
    for name, samples in table.items():
        params[name] = fit_samples(samples, degree, denominator, (pinned or {}).get(name, ()), exact)
        grid = tuple(sorted(x for x, _ in samples))
        logger.debug(f"{name}(α) ≈ {params[name]}")
    return FittedParams(params, degree, denominator, grid)
