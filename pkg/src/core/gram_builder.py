"""
平方和 (Gram 矩陣) 係數匹配問題的建構

E_α[zᵀAz] + Σ cⱼ·slackⱼ 以 heat_calculus 化簡後,逐一比對每個標準動差乘積的係數,
得到 Gram 元素與鬆弛係數的仿射方程 (係數為 α 的多項式)。
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import OrderMismatch, Unsupported
from ..models import (
    AffineConstraint,
    AlphaPoly,
    DerivativeResult,
    EntropyKind,
    GramBasisElement,
    GramProblem,
    MomentExpr,
    MomentSymbol,
    MomentTerm,
    RawIntegral,
    SlackTerm,
    entry_name,
    moment_make,
)
from .heat_calculus import power_concavity_expr, reduce_raw_integral

logger = logging.getLogger(__name__)

E12 = moment_make({1: 2})
E14 = moment_make({1: 4})
E16 = moment_make({1: 6})
E22 = moment_make({2: 2})
E32 = moment_make({3: 2})
E12_22 = moment_make({1: 2, 2: 2})

# 每個 Rényi 基底元素:(逐點因子, 純量動差)
_RENYI_BASES: Dict[int, Tuple[Tuple[Dict[int, int], Tuple[MomentSymbol, ...]], ...]] = {
    2: (({2: 1}, ()), ({1: 2}, ()), ({}, (E12,))),
    3: (({3: 1}, ()), ({1: 1, 2: 1}, ()), ({1: 3}, ()), ({1: 1}, (E12,))),
    4: (
        ({4: 1}, ()),
        ({1: 1, 3: 1}, ()),
        ({2: 2}, ()),
        ({1: 2, 2: 1}, ()),
        ({1: 4}, ()),
        ({}, (E14,)),
        ({2: 1}, (E12,)),
        ({}, (E22,)),
        ({}, (E12, E12)),
        ({1: 2}, (E12,)),
    ),
}


def default_gram_basis(order: int, kind: EntropyKind) -> Tuple[GramBasisElement, ...]:
    """
    第 k 階問題的預設基底

    Tsallis 基底只保留不含純量動差的逐點分量。

    Raises:
        Unsupported: k 不在 2..4
    """
    kind = EntropyKind.parse(kind)
    if order not in _RENYI_BASES:
        raise Unsupported(f"沒有第 {order} 階的預設基底 (支援 2..4)")
    elements = tuple(GramBasisElement.of(pointwise, *scalars) for pointwise, scalars in _RENYI_BASES[order])
    if kind == EntropyKind.TSALLIS:
        elements = tuple(e for e in elements if not e.scalar_moments)
    return elements


def default_slack_terms(order: int, kind: EntropyKind) -> Tuple[SlackTerm, ...]:
    """k=3、k=4 Rényi 問題的預設非負鬆弛項;其餘為空"""
    kind = EntropyKind.parse(kind)
    if kind == EntropyKind.TSALLIS:
        return ()
    if order == 3:
        return (
            SlackTerm("d", MomentExpr.of(E14, E12)),
            SlackTerm("e", MomentExpr.of(E12, E22)),
        )
    if order == 4:
        return (
            SlackTerm("c1", MomentExpr.of(E16, E12)),
            SlackTerm("c2", MomentExpr.of(E12_22, E12)),
            SlackTerm("c3", MomentExpr.of(E14, E22)),
            SlackTerm("c4", MomentExpr.of(E12, E32)),
        )
    return ()


def parse_slack_spec(text: str) -> Optional[Tuple[SlackTerm, ...]]:
    """
    解析 "d=1:4|1:2;e=1:2|2:2" 形式的鬆弛設定

    每個鬆弛為 name=符號|符號…,符號為逗號分隔的 階數:指數。
    "default" 回傳 None (沿用預設),"none" 回傳空集合。
    """
    text = text.strip()
    if text.lower() == "default":
        return None
    if text.lower() in ("none", ""):
        return ()
    slacks = []
    for chunk in text.split(";"):
        try:
            name, body = chunk.split("=", 1)
            symbols = []
            for symbol_text in body.split("|"):
                factors = {}
                for pair in symbol_text.split(","):
                    order, exp = pair.split(":")
                    factors[int(order)] = factors.get(int(order), 0) + int(exp)
                symbols.append(moment_make(factors))
        except ValueError as e:
            raise ValueError(f"無法解析鬆弛設定 {chunk!r}: {e}") from e
        slacks.append(SlackTerm(name.strip(), MomentExpr.of(*symbols)))
    return tuple(slacks)


def expectation_of_product(left: GramBasisElement, right: GramBasisElement) -> MomentExpr:
    """E_α[zᵢzⱼ];純量動差可提出期望值之外"""
    counts: Dict[int, int] = {}
    for order, exp in left.pointwise + right.pointwise:
        counts[order] = counts.get(order, 0) + exp
    pointwise = MomentExpr.one() if not counts else reduce_raw_integral(RawIntegral.of(counts))
    scalars = left.scalar_moments + right.scalar_moments
    if not scalars:
        return pointwise
    return pointwise * MomentExpr.of(*scalars)


def scaled_target(result: DerivativeResult) -> MomentExpr:
    """(−1)^{k−1}·(12/α)·導數;Tsallis 的 Z 因子為正,直接略去"""
    sign = 1 if result.order % 2 == 1 else -1
    return result.expr.exact_div(AlphaPoly.alpha()).scale(12 * sign)


def _check_orders(expr: MomentExpr, expected: int, what: str) -> None:
    orders = set(expr.total_orders())
    if orders and orders != {expected}:
        raise OrderMismatch(f"{what} 的總階數 {sorted(orders)} 與基底要求的 {expected} 不符")


def build_gram_problem(
    target: Union[DerivativeResult, MomentExpr],
    basis: Sequence[GramBasisElement],
    slack_spec: Optional[Sequence[SlackTerm]] = None,
) -> GramProblem:
    """
    建立係數匹配問題

    Args:
        target: DerivativeResult 時使用 (−1)^{k−1}(12/α)·h^{(k)};MomentExpr 原樣使用
        basis: 基底向量 z
        slack_spec: 鬆弛項;None 表示依目標的 (k, 種類) 使用預設

    Returns:
        GramProblem,未知數為上三角 Gram 元素與鬆弛係數

    Raises:
        OrderMismatch: 基底、目標或鬆弛項的總階數不一致
    """
    basis = tuple(basis)
    if not basis:
        raise OrderMismatch("基底不可為空")
    orders = {element.total_order for element in basis}
    if len(orders) != 1:
        raise OrderMismatch(f"基底元素的總階數不一致: {sorted(orders)}")
    half = orders.pop()

    if isinstance(target, DerivativeResult):
        if target.order != half:
            raise OrderMismatch(f"第 {target.order} 階導數不能用第 {half} 階基底")
        if slack_spec is None:
            slack_spec = default_slack_terms(target.order, target.kind)
        target_expr = scaled_target(target)
    else:
        target_expr = target.normalize()
    slack_terms = tuple(slack_spec or ())

    _check_orders(target_expr, 2 * half, "目標")
    for slack in slack_terms:
        _check_orders(slack.expr, 2 * half, f"鬆弛項 {slack.name}")

    contributions: Dict[str, MomentExpr] = {}
    n = len(basis)
    for i in range(n):
        for j in range(i, n):
            weight = 1 if i == j else 2
            contributions[entry_name(i, j)] = expectation_of_product(basis[i], basis[j]).scale(weight)
    for slack in slack_terms:
        contributions[slack.name] = slack.expr.scale(slack.sign)

    monomials: Dict[Tuple[MomentSymbol, ...], MomentTerm] = {}
    for expr in list(contributions.values()) + [target_expr]:
        for term in expr.terms:
            monomials.setdefault(term.symbols, term)
    ordered = sorted(monomials.values(), key=lambda t: (t.total_order, len(t.symbols), t.key()))

    constraints = []
    for term in ordered:
        coefficients = []
        for name, expr in contributions.items():
            coeff = expr.coefficient_of(*term.symbols)
            if not coeff.is_zero:
                coefficients.append((name, coeff))
        rhs = target_expr.coefficient_of(*term.symbols)
        constraints.append(AffineConstraint(term.symbols, tuple(coefficients), rhs))

    problem = GramProblem(basis, target_expr, slack_terms, tuple(constraints))
    logger.debug(
        f"Gram 問題: 基底 {n}、未知數 {len(problem.unknowns)}、方程 {len(constraints)}"
    )
    return problem


def concavity_gram_problem(beta) -> GramProblem:
    """−(1/α)·(h'' + 2β(h')²) 在 k=2 基底上的匹配問題"""
    target = power_concavity_expr(beta).exact_div(AlphaPoly.alpha()).scale(-1)
    return build_gram_problem(target, default_gram_basis(2, EntropyKind.RENYI), ())


def _pivot_rank(problem: GramProblem, name: str) -> Tuple[int, int]:
    """Gram 對角元素優先,其次非對角,鬆弛係數最後;同類依未知數順序"""
    index = problem.unknowns.index(name)
    if name.startswith("g"):
        i, j = problem.entry_index(name)
        return (0 if i == j else 1, index)
    return (2, index)


def choose_free_parameters(problem: GramProblem) -> Tuple[List[str], List[str]]:
    """
    決定性地選出相依與自由未知數

    方程依未知數個數由少到多處理;每個方程選一個尚未被選、係數為非零常數的
    未知數作為相依元素,使組裝時可逐一剝離。其餘未知數為自由參數。

    Returns:
        (自由參數, 相依參數),皆依未知數順序排列
    """
    order = sorted(range(len(problem.constraints)), key=lambda k: (len(problem.constraints[k].coefficients), k))
    dependent: List[str] = []
    for k in order:
        constraint = problem.constraints[k]
        candidates = [
            name
            for name, coeff in constraint.coefficients
            if name not in dependent and coeff.is_constant and not coeff.is_zero
        ]
        if candidates:
            dependent.append(min(candidates, key=lambda name: _pivot_rank(problem, name)))
    unknowns = problem.unknowns
    free = [name for name in unknowns if name not in dependent]
    dependent.sort(key=unknowns.index)
    return free, dependent


def numeric_residual(problem: GramProblem, alpha: float, values: Dict[str, float]) -> float:
    """浮點 α 下各方程 |左邊 − 右邊| 的最大值"""
    matrix, rhs = problem.numeric_system(alpha)
    vector = np.array([values.get(name, 0.0) for name in problem.unknowns], dtype=float)
    if not len(rhs):
        return 0.0
    return float(np.max(np.abs(matrix @ vector - rhs)))
