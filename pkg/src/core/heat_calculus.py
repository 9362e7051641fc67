"""
熱方程 ∂p/∂t = ½∂²p/∂x² 下的分部積分化簡與時間微分

所有函式皆為純函式;lru_cache 僅作為相同輸入的結果快取。
"""

import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from ..config import Settings
from ..errors import ResourceLimit
from ..models import (
    AlphaPoly,
    DerivativeResult,
    EntropyKind,
    MomentExpr,
    MomentSymbol,
    MomentTerm,
    RawIntegral,
)
from ..models.moment import Factors, freeze_factors

logger = logging.getLogger(__name__)

ALPHA = AlphaPoly.alpha()
FISHER = MomentSymbol(((1, 2),))
# α(α−1)/2,即 −(∂t Z)/Z 中 E[p̄₁²] 的係數
HALF_ALPHA_ALPHA_MINUS_ONE = ALPHA * (ALPHA - 1) / 2

T = TypeVar("T")


def _shift(factors: Factors, *changes: Tuple[int, int]) -> Factors:
    """依序套用 (階數, 指數變化);同階數的變化會累加"""
    counter = Counter(dict(factors))
    for order, delta in changes:
        counter[order] += delta
    return freeze_factors((order, exp) for order, exp in counter.items() if exp)


@lru_cache(maxsize=None)
def _reduce_factors(factors: Factors) -> MomentExpr:
    if not factors:
        return MomentExpr.one()
    if factors == ((1, 1),):
        # ∫p^{α−1}p₁ = (1/α)∫d(p^α),邊界項為零
        return MomentExpr.zero()

    top, top_exp = factors[-1]
    if top_exp >= 2:
        return MomentExpr.of(MomentSymbol(factors))

    # 最高階 p_N 只出現一次:∫ u·p_{N−1}^e·p_N = (1/(e+1))∫ u d(p_{N−1}^{e+1})
    offset = -sum(exp for _, exp in factors)
    lower = dict(factors)
    del lower[top]
    e = lower.pop(top - 1, 0)
    lower_factors = freeze_factors(lower)
    scale = Fraction(-1, e + 1)

    pieces = []
    # d/dx 作用在 p^{α+c}
    pieces.append(
        (
            (ALPHA + offset) * scale,
            RawIntegral(offset - 1, _shift(lower_factors, (1, 1), (top - 1, e + 1))),
        )
    )
    # d/dx 作用在 p_j^{m}
    for order, exp in lower_factors:
        pieces.append(
            (
                AlphaPoly.constant(exp * scale),
                RawIntegral(offset, _shift(lower_factors, (order, -1), (order + 1, 1), (top - 1, e + 1))),
            )
        )

    collected: List[MomentTerm] = []
    for coefficient, raw in pieces:
        for term in _reduce_factors(raw.factors).terms:
            collected.append(MomentTerm(term.coefficient * coefficient, term.symbols))
    return MomentExpr(tuple(collected)).normalize()


def reduce_raw_integral(raw: RawIntegral) -> MomentExpr:
    """
    將 ∫p^{α+c}∏p_n^{k_n}dx / ∫p^α dx 化簡為標準動差的線性組合

    Args:
        raw: 已通過齊次性檢查的原始積分

    Returns:
        MomentExpr: 只含單一符號項的正規化表示式
    """
    return _reduce_factors(raw.factors)


@lru_cache(maxsize=None)
def ddt_moment_raw(symbol: MomentSymbol) -> MomentExpr:
    """
    原始積分 I(m) = ∫p^{α+c}∏p_n^{k_n}dx 的 t 導數除以 Z

    使用 p_t = p₂/2 與 (p_n)_t = p_{n+2}/2,每一項再化簡。
    """
    offset = -sum(exp for _, exp in symbol.factors)
    parts: List[MomentTerm] = []

    head = RawIntegral(offset - 1, _shift(symbol.factors, (2, 1)))
    for term in reduce_raw_integral(head).terms:
        parts.append(MomentTerm(term.coefficient * (ALPHA + offset) / 2, term.symbols))

    for order, exp in symbol.factors:
        raw = RawIntegral(offset, _shift(symbol.factors, (order, -1), (order + 2, 1)))
        for term in reduce_raw_integral(raw).terms:
            parts.append(MomentTerm(term.coefficient * Fraction(exp, 2), term.symbols))

    return MomentExpr(tuple(parts)).normalize()


@lru_cache(maxsize=None)
def ddt_moment(symbol: MomentSymbol) -> MomentExpr:
    """正規化動差 E_α[m] 的 t 導數 (對 Z 使用商法則)"""
    moment = MomentExpr.one() if symbol.is_unit else MomentExpr.of(symbol)
    correction = MomentExpr.of(FISHER, coefficient=HALF_ALPHA_ALPHA_MINUS_ONE) * moment
    return ddt_moment_raw(symbol) + correction


def ddt_expr(expr: MomentExpr) -> MomentExpr:
    """對動差乘積做乘積法則"""
    collected: List[MomentTerm] = []
    for term in expr.normalize().terms:
        for symbol, power in term.multiplicities():
            others = list(term.symbols)
            others.remove(symbol)
            for piece in ddt_moment(symbol).terms:
                collected.append(
                    MomentTerm(term.coefficient * piece.coefficient * power, tuple(others) + piece.symbols)
                )
    return MomentExpr(tuple(collected)).normalize()


def tsallis_step(expr: MomentExpr) -> MomentExpr:
    """Z·Q_j 的 t 導數除以 Z;輸入與輸出皆不含乘積"""
    collected: List[MomentTerm] = []
    for term in expr.normalize().terms:
        symbol = term.symbols[0] if term.symbols else MomentSymbol.unit()
        for piece in ddt_moment_raw(symbol).terms:
            collected.append(MomentTerm(term.coefficient * piece.coefficient, piece.symbols))
    return MomentExpr(tuple(collected)).normalize()


def first_derivative() -> MomentExpr:
    """(α/2)·E[p̄₁²],即 α-傾斜 Fisher 資訊的 α/2 倍"""
    return MomentExpr.of(FISHER, coefficient=ALPHA / 2)


def _check_size(expr: MomentExpr, order: int, max_terms: Optional[int]) -> None:
    if max_terms is not None and len(expr) > max_terms:
        raise ResourceLimit(f"第 {order} 階導數有 {len(expr)} 項,超過上限 {max_terms}")


@lru_cache(maxsize=None)
def _renyi_chain(order: int) -> MomentExpr:
    if order == 1:
        return first_derivative()
    return ddt_expr(_renyi_chain(order - 1))


@lru_cache(maxsize=None)
def _tsallis_chain(order: int) -> MomentExpr:
    if order == 1:
        return first_derivative()
    return tsallis_step(_tsallis_chain(order - 1))


def entropy_derivative(
    kind: EntropyKind,
    order: int,
    max_order: int = 12,
    max_terms: Optional[int] = None,
) -> DerivativeResult:
    """
    熵沿熱流的 k 階 t 導數

    Args:
        kind: renyi / tsallis / shannon
        order: 導數階數 k ≥ 1
        max_order: 階數上限
        max_terms: 展開項數上限 (None 表示不限)

    Returns:
        DerivativeResult

    Raises:
        ValueError: order < 1
        ResourceLimit: 超過階數或項數上限
    """
    if order < 1:
        raise ValueError(f"導數階數必須 ≥ 1: {order}")
    if order > max_order:
        raise ResourceLimit(f"導數階數 {order} 超過上限 {max_order}")

    if kind == EntropyKind.TSALLIS:
        for j in range(1, order + 1):
            _check_size(_tsallis_chain(j), j, max_terms)
        return DerivativeResult(kind, order, _tsallis_chain(order), normalizer_power=1)

    for j in range(1, order + 1):
        _check_size(_renyi_chain(j), j, max_terms)
    expr = _renyi_chain(order)
    if kind == EntropyKind.SHANNON:
        expr = expr.substitute_alpha(1)
    return DerivativeResult(kind, order, expr)


def power_concavity_expr(beta) -> MomentExpr:
    """
    h'' + 2β(h')²;N_α^β = exp(2βh_α) 為凹函數若且唯若此式 ≤ 0

    Args:
        beta: AlphaPoly 或有理數
    """
    beta_poly = beta if isinstance(beta, AlphaPoly) else AlphaPoly.constant(beta)
    h1 = _renyi_chain(1)
    return _renyi_chain(2) + (h1 * h1).scale(beta_poly * 2)


def renyi_from_tsallis(
    tsallis: Sequence[T],
    one_minus_alpha,
    binomial: Callable[[int, int], int] = comb,
) -> List[T]:
    """
    由 Tsallis 導數 Q_1..Q_k (已除以 Z) 得到 Rényi 導數 h_1..h_k

    h_k = Q_k − (1−α)·Σ_{j=1}^{k−1} C(k−1, j−1)·h_j·Q_{k−j}

    同時適用於 MomentExpr (one_minus_alpha 為 AlphaPoly) 與浮點數。
    """
    renyi: List[T] = []
    for k in range(1, len(tsallis) + 1):
        value = tsallis[k - 1]
        for j in range(1, k):
            value = value - (renyi[j - 1] * tsallis[k - j - 1]) * (one_minus_alpha * binomial(k - 1, j - 1))
        renyi.append(value)
    return renyi


class HeatCalculus:
    """導數推導服務的核心,套用設定中的資源上限"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    def derive(self, kind: EntropyKind, order: int) -> DerivativeResult:
        logger.info(f"推導 {kind.value} 熵的第 {order} 階導數")
        result = entropy_derivative(
            kind,
            order,
            max_order=self.settings.MAX_DERIVATIVE_ORDER,
            max_terms=self.settings.MAX_CANONICAL_TERMS,
        )
        logger.info(f"✓ 共 {len(result.expr)} 項")
        return result

    def tsallis_family(self, order: int) -> List[MomentExpr]:
        """Q_1..Q_k,供數值路線使用"""
        return [self.derive(EntropyKind.TSALLIS, j).expr for j in range(1, order + 1)]
