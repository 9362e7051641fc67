"""
分部積分化簡恆等式集

每一條恆等式的左邊由化簡引擎計算,右邊為手寫的標準動差組合,
比較時兩邊都是 ∫p^α dx 正規化後的 MomentExpr。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from ..models import AlphaPoly, MomentExpr, MomentSymbol, RawIntegral
from .heat_calculus import ddt_expr, ddt_moment, ddt_moment_raw, reduce_raw_integral

a = AlphaPoly.alpha()


def E(*pairs: Tuple[int, int]) -> MomentSymbol:
    """E(1, 4) 表示 E[p̄₁⁴];E((1, 2), (2, 2)) 表示 E[p̄₁²p̄₂²]"""
    if pairs and isinstance(pairs[0], int):
        pairs = (pairs,)
    return MomentSymbol(tuple(pairs))


def combo(*terms) -> MomentExpr:
    """由 (係數, 符號...) 組成表示式"""
    out = MomentExpr.zero()
    for coefficient, *symbols in terms:
        out = out + MomentExpr.of(*symbols, coefficient=coefficient)
    return out


def reduced(*factors: Tuple[int, int], scale=1) -> Callable[[], MomentExpr]:
    return lambda: reduce_raw_integral(RawIntegral.of(factors)).scale(scale)


def raw_time(*factors: Tuple[int, int]) -> Callable[[], MomentExpr]:
    return lambda: ddt_moment_raw(MomentSymbol(tuple(factors)))


def normalized_time(*factors: Tuple[int, int]) -> Callable[[], MomentExpr]:
    return lambda: ddt_moment(MomentSymbol(tuple(factors)))


@dataclass(frozen=True)
class IdentityCase:
    """一條化簡恆等式"""

    name: str
    group: str
    compute: Callable[[], MomentExpr]
    expected: MomentExpr


@dataclass(frozen=True)
class IdentityCheck:
    """恆等式驗證結果"""

    name: str
    group: str
    passed: bool
    difference: MomentExpr

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "group": self.group,
            "passed": self.passed,
            "difference": str(self.difference),
        }


E12 = E(1, 2)
E14 = E(1, 4)
E16 = E(1, 6)
E18 = E(1, 8)
E22 = E(2, 2)
E23 = E(2, 3)
E24 = E(2, 4)
E32 = E(3, 2)
E42 = E(4, 2)
E12_22 = E((1, 2), (2, 2))
E14_22 = E((1, 4), (2, 2))
E12_23 = E((1, 2), (2, 3))
E12_32 = E((1, 2), (3, 2))
E21_32 = E((2, 1), (3, 2))

HALF = Fraction(1, 2)


def _second_order() -> List[IdentityCase]:
    g = "second-order"
    return [
        IdentityCase("∫p^(α-3) p_t p1^2", g, reduced((1, 2), (2, 1), scale=HALF),
                     combo((-(a - 3) / 6, E14))),
        IdentityCase("∫p^(α-2) p1 p_xt", g, reduced((1, 1), (3, 1), scale=HALF),
                     combo(((a - 2) * (a - 3) / 6, E14), (-HALF, E22))),
        IdentityCase(
            "∫p^(α-2) p1 p_xt via ∫p^(α-3) p1^2 p2", g,
            reduced((1, 1), (3, 1), scale=HALF),
            reduce_raw_integral(RawIntegral.of({1: 2, 2: 1})).scale(-(a - 2) / 2) + combo((-HALF, E22)),
        ),
        IdentityCase("∫p^(α-3) p1^2 p2", g, reduced((1, 2), (2, 1)),
                     combo((-(a - 3) / 3, E14))),
        IdentityCase("∂t ∫p^(α-2) p1^2", g, raw_time((1, 2)),
                     combo(((a - 2) * (a - 3) / 6, E14), (-1, E22))),
        IdentityCase("∂t ∫p^α", g, raw_time(),
                     combo((-a * (a - 1) / 2, E12))),
    ]


def _third_order() -> List[IdentityCase]:
    g = "third-order"
    return [
        IdentityCase("∫p^(α-5) p1^4 p2", g, reduced((1, 4), (2, 1)),
                     combo((-(a - 5) / 5, E16))),
        IdentityCase("∫p^(α-4) p1^3 p3", g, reduced((1, 3), (3, 1)),
                     combo(((a - 4) * (a - 5) / 5, E16), (-3, E12_22))),
        IdentityCase("∫p^(α-3) p1 p2 p3", g, reduced((1, 1), (2, 1), (3, 1)),
                     combo((-(a - 3) / 2, E12_22), (-HALF, E23))),
        IdentityCase("∫p^(α-2) p2 p4", g, reduced((2, 1), (4, 1)),
                     combo(((a - 2) * (a - 3) / 2, E12_22), ((a - 2) / 2, E23), (-1, E32))),
        IdentityCase("∫p^(α-3) p1^2 p2 (third-order)", g, reduced((1, 2), (2, 1)),
                     combo((-(a - 3) / 3, E14))),
        IdentityCase("∫p^(α-2) p1 p3", g, reduced((1, 1), (3, 1)),
                     combo(((a - 2) * (a - 3) / 3, E14), (-1, E22))),
        IdentityCase("∫p^(α-1) p4", g, reduced((4, 1)),
                     combo((-(a - 1) * (a - 2) * (a - 3) / 3, E14), (a - 1, E22))),
        IdentityCase("∫p^(α-3) p1^2 p4", g, reduced((1, 2), (4, 1)),
                     combo((-(a - 3) * (a - 4) * (a - 5) / 5, E16), (4 * (a - 3), E12_22), (1, E23))),
    ]


def _third_order_time() -> List[IdentityCase]:
    g = "third-order-time"
    return [
        IdentityCase("∂t ∫p^(α-4) p1^4", g, raw_time((1, 4)),
                     combo((3 * (a - 4) * (a - 5) / 10, E16), (-6, E12_22))),
        IdentityCase("∂t ∫p^(α-2) p2^2", g, raw_time((2, 2)),
                     combo(((a - 2) * (a - 3) / 2, E12_22), (a - 2, E23), (-1, E32))),
    ]


def _fourth_order() -> List[IdentityCase]:
    g = "fourth-order"
    return [
        IdentityCase("∫p^(α-7) p2 p1^6", g, reduced((1, 6), (2, 1)),
                     combo((-(a - 7) / 7, E18))),
        IdentityCase("∫p^(α-6) p1^5 p3", g, reduced((1, 5), (3, 1)),
                     combo(((a - 6) * (a - 7) / 7, E18), (-5, E14_22))),
        IdentityCase("∫p^(α-5) p1^3 p2 p3", g, reduced((1, 3), (2, 1), (3, 1)),
                     combo((-(a - 5) / 2, E14_22), (Fraction(-3, 2), E12_23))),
        IdentityCase("∫p^(α-4) p1 p2^2 p3", g, reduced((1, 1), (2, 2), (3, 1)),
                     combo((-(a - 4) / 3, E12_23), (Fraction(-1, 3), E24))),
        IdentityCase("∫p^(α-4) p1^2 p2 p4", g, reduced((1, 2), (2, 1), (4, 1)),
                     combo(((a - 4) * (a - 5) / 2, E14_22), (Fraction(13, 6) * (a - 4), E12_23),
                           (Fraction(2, 3), E24), (-1, E12_32))),
        IdentityCase("∫p^(α-3) p2^2 p4", g, reduced((2, 2), (4, 1)),
                     combo(((a - 3) * (a - 4) / 3, E12_23), ((a - 3) / 3, E24), (-2, E21_32))),
        IdentityCase("∫p^(α-3) p1 p3 p4", g, reduced((1, 1), (3, 1), (4, 1)),
                     combo((-(a - 3) / 2, E12_32), (-HALF, E21_32))),
        IdentityCase("∫p^(α-2) p3 p5", g, reduced((3, 1), (5, 1)),
                     combo(((a - 2) * (a - 3) / 2, E12_32), ((a - 2) / 2, E21_32), (-1, E42))),
        IdentityCase("∫p^(α-5) p1^4 p4", g, reduced((1, 4), (4, 1)),
                     combo((-(a - 5) * (a - 6) * (a - 7) / 7, E18), (7 * (a - 5), E14_22), (6, E12_23))),
    ]


def _fourth_order_time() -> List[IdentityCase]:
    g = "fourth-order-time"
    return [
        IdentityCase("∂t ∫p^(α-6) p1^6", g, raw_time((1, 6)),
                     combo((Fraction(5, 14) * (a - 6) * (a - 7), E18), (-15, E14_22))),
        IdentityCase("∂t ∫p^(α-4) p1^2 p2^2", g, raw_time((1, 2), (2, 2)),
                     combo((Fraction(7, 3) * (a - 4), E12_23), (Fraction(1, 3), E24), (-1, E12_32),
                           ((a - 4) * (a - 5) / 2, E14_22))),
        IdentityCase("∂t ∫p^(α-3) p2^3", g, raw_time((2, 3)),
                     combo(((a - 3) * (a - 4) / 2, E12_23), (a - 3, E24), (-3, E21_32))),
        IdentityCase("∂t ∫p^(α-2) p3^2", g, raw_time((3, 2)),
                     combo(((a - 2) * (a - 3) / 2, E12_32), (a - 2, E21_32), (-1, E42))),
    ]


def _normalized_time() -> List[IdentityCase]:
    g = "normalized-time"
    c = a * (a - 1) / 2
    return [
        IdentityCase("∂t E[p̄1^4]", g, normalized_time((1, 4)),
                     combo((3 * (a - 4) * (a - 5) / 10, E16), (-6, E12_22), (c, E14, E12))),
        IdentityCase("∂t E[p̄2^2]", g, normalized_time((2, 2)),
                     combo(((a - 2) * (a - 3) / 2, E12_22), (a - 2, E23), (-1, E32), (c, E12, E22))),
        IdentityCase("∂t E[p̄1^2]", g, normalized_time((1, 2)),
                     combo(((a - 2) * (a - 3) / 6, E14), (-1, E22), (c, E12, E12))),
        IdentityCase(
            "∂t (E[p̄1^2])^2", g, lambda: ddt_expr(MomentExpr.of(E12, E12)),
            combo(((a - 2) * (a - 3) / 3, E12, E14), (-2, E12, E22), (a * (a - 1), E12, E12, E12)),
        ),
        IdentityCase("∂t E[p̄1^6]", g, normalized_time((1, 6)),
                     combo((Fraction(5, 14) * (a - 6) * (a - 7), E18), (-15, E14_22), (c, E16, E12))),
        IdentityCase("∂t E[p̄1^2 p̄2^2]", g, normalized_time((1, 2), (2, 2)),
                     combo(((a - 4) * (a - 5) / 2, E14_22), (Fraction(7, 3) * (a - 4), E12_23),
                           (Fraction(1, 3), E24), (-1, E12_32), (c, E12, E12_22))),
        IdentityCase("∂t E[p̄2^3]", g, normalized_time((2, 3)),
                     combo(((a - 3) * (a - 4) / 2, E12_23), (a - 3, E24), (-3, E21_32), (c, E23, E12))),
        IdentityCase("∂t E[p̄3^2]", g, normalized_time((3, 2)),
                     combo(((a - 2) * (a - 3) / 2, E12_32), (a - 2, E21_32), (-1, E42), (c, E12, E32))),
    ]


def identity_suite(include_normalized: bool = True) -> List[IdentityCase]:
    """
    全部化簡恆等式

    Args:
        include_normalized: 是否附加正規化動差的 t 導數 (商法則版本)
    """
    cases = _second_order() + _third_order() + _third_order_time() + _fourth_order() + _fourth_order_time()
    if include_normalized:
        cases += _normalized_time()
    return cases


def verify_identities(include_normalized: bool = True) -> List[IdentityCheck]:
    """逐條比較引擎結果與手寫右邊,差為零即通過"""
    checks = []
    for case in identity_suite(include_normalized):
        difference = case.compute() - case.expected
        checks.append(IdentityCheck(case.name, case.group, difference.is_zero, difference))
    return checks
