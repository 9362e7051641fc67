"""測試分部積分化簡與熱流時間微分"""

from fractions import Fraction

import pytest

from src.config import Settings
from src.core import (
    HeatCalculus,
    ddt_expr,
    ddt_moment,
    ddt_moment_raw,
    entropy_derivative,
    power_concavity_expr,
    reduce_raw_integral,
    renyi_from_tsallis,
)
from src.errors import ResourceLimit
from src.models import AlphaPoly, EntropyKind, MomentExpr, MomentSymbol, RawIntegral, moment_make

A = AlphaPoly.alpha()
E12 = moment_make({1: 2})
E14 = moment_make({1: 4})
E16 = moment_make({1: 6})
E18 = moment_make({1: 8})
E22 = moment_make({2: 2})
E23 = moment_make({2: 3})
E24 = moment_make({2: 4})
E32 = moment_make({3: 2})
E42 = moment_make({4: 2})
E12_22 = moment_make({1: 2, 2: 2})
E14_22 = moment_make({1: 4, 2: 2})
E12_23 = moment_make({1: 2, 2: 3})
E12_32 = moment_make({1: 2, 3: 2})
E21_32 = moment_make({2: 1, 3: 2})


def combo(*pairs) -> MomentExpr:
    """(係數, 符號…) 的線性組合"""
    total = MomentExpr.zero()
    for coefficient, *symbols in pairs:
        total = total + MomentExpr.of(*symbols, coefficient=coefficient)
    return total


class TestReduceRawIntegral:
    """測試原始積分化為標準動差"""

    def test_p1_squared_p2(self):
        """測試 ∫p^(α−3)p₁²p₂ = −((α−3)/3)E[p̄₁⁴]"""
        assert reduce_raw_integral(RawIntegral.of({1: 2, 2: 1})) == combo((-(A - 3) / 3, E14))

    def test_p1_p3(self):
        """測試 ∫p^(α−2)p₁p₃"""
        expected = combo(((A - 2) * (A - 3) / 3, E14), (-1, E22))
        assert reduce_raw_integral(RawIntegral.of({1: 1, 3: 1})) == expected

    def test_exact_differential(self):
        """測試 ∫p^(α−1)p₁ = 0"""
        assert reduce_raw_integral(RawIntegral.of({1: 1})).is_zero

    def test_p1_fourth_p2(self):
        """測試 ∫p^(α−5)p₁⁴p₂ = −((α−5)/5)E[p̄₁⁶]"""
        assert reduce_raw_integral(RawIntegral.of({1: 4, 2: 1})) == combo((-(A - 5) / 5, E16))

    def test_unit_and_canonical(self):
        """測試單位元與已是標準形式的積分"""
        assert reduce_raw_integral(RawIntegral.of({})) == MomentExpr.one()
        assert reduce_raw_integral(RawIntegral.of({2: 2})) == MomentExpr.of(E22)

    @pytest.mark.parametrize(
        "factors",
        [{1: 1, 2: 1, 3: 1}, {2: 1, 4: 1}, {1: 2, 4: 1}, {3: 1, 5: 1}, {1: 1, 2: 2, 3: 1}, {6: 1}],
    )
    def test_order_conserved(self, factors):
        """測試化簡保持總階數且結果不含乘積"""
        raw = RawIntegral.of(factors)
        expr = reduce_raw_integral(raw)
        assert expr.is_product_free
        assert set(expr.total_orders()) <= {raw.total_order}


class TestTimeDerivative:
    """測試時間導數"""

    def test_raw_p1_fourth(self):
        """測試 ∂t ∫p^(α−4)p₁⁴"""
        expected = combo((3 * (A - 4) * (A - 5) / 10, E16), (-6, E12_22))
        assert ddt_moment_raw(E14) == expected

    def test_raw_p2_squared(self):
        """測試 ∂t ∫p^(α−2)p₂²"""
        expected = combo(((A - 2) * (A - 3) / 2, E12_22), (A - 2, E23), (-1, E32))
        assert ddt_moment_raw(E22) == expected

    def test_raw_unit(self):
        """測試 ∂t ∫p^α = −(α(α−1)/2)Z·E[p̄₁²]"""
        assert ddt_moment_raw(MomentSymbol.unit()) == combo((-A * (A - 1) / 2, E12))

    def test_normalized_unit_is_zero(self):
        """測試 E[1] 不隨時間變化"""
        assert ddt_moment(MomentSymbol.unit()).is_zero

    def test_normalized_p1_fourth(self):
        """測試 ∂t E[p̄₁⁴] 含商法則修正項"""
        expected = combo(
            (3 * (A - 4) * (A - 5) / 10, E16),
            (-6, E12_22),
            (A * (A - 1) / 2, E14, E12),
        )
        assert ddt_moment(E14) == expected

    def test_normalized_p3_squared(self):
        """測試 ∂t E[p̄₃²]"""
        expected = combo(
            ((A - 2) * (A - 3) / 2, E12_32),
            (A - 2, E21_32),
            (-1, E42),
            (A * (A - 1) / 2, E12, E32),
        )
        assert ddt_moment(E32) == expected

    def test_product_rule(self):
        """測試 d/dt (E[p̄₁²])² = 2E[p̄₁²]·∂t E[p̄₁²]"""
        square = MomentExpr.of(E12, E12)
        assert ddt_expr(square) == (MomentExpr.of(E12) * ddt_moment(E12)).scale(2)

    def test_constant_derivative(self):
        """測試常數的導數為零"""
        assert ddt_expr(MomentExpr.constant(A)).is_zero

    @pytest.mark.parametrize("symbol", [E12, E14, E22, E12_22, E23])
    def test_order_increases_by_two(self, symbol):
        """測試每次時間微分總階數增加 2"""
        assert set(ddt_moment(symbol).total_orders()) == {symbol.total_order + 2}


class TestEntropyDerivative:
    """測試熵的 k 階導數"""

    def test_first_derivative(self):
        """測試 h′ = (α/2)E[p̄₁²]"""
        result = entropy_derivative(EntropyKind.RENYI, 1)
        assert result.expr == combo((A / 2, E12))
        assert result.normalizer_power == 0
        assert result.sign == 1

    def test_second_derivative(self):
        """測試 h″ = (α/12)[(α−2)(α−3)E[p̄₁⁴] − 6E[p̄₂²] + 3α(α−1)(E[p̄₁²])²]"""
        expected = combo(
            (A * (A - 2) * (A - 3) / 12, E14),
            (-A / 2, E22),
            (A * A * (A - 1) / 4, E12, E12),
        )
        result = entropy_derivative(EntropyKind.RENYI, 2)
        assert result.expr == expected
        assert result.sign == -1

    def test_third_derivative(self):
        """測試 Rényi 第三階導數的完整展開 (含乘積項)"""
        f = A / 12
        expected = combo(
            (f * Fraction(3, 10) * (A - 2) * (A - 3) * (A - 4) * (A - 5), E16),
            (f * -9 * (A - 2) * (A - 3), E12_22),
            (f * Fraction(3, 2) * A * (A - 1) * (A - 2) * (A - 3), E14, E12),
            (f * -6 * (A - 2), E23),
            (f * 6, E32),
            (f * -9 * A * (A - 1), E12, E22),
            (f * 3 * A * A * (A - 1) * (A - 1), E12, E12, E12),
        )
        result = entropy_derivative(EntropyKind.RENYI, 3)
        assert result.expr == expected
        assert result.sign == 1

    def test_fourth_derivative(self):
        """測試 Rényi 第四階導數的完整展開 (含乘積項)"""
        f = A / 12
        b = A * (A - 1)
        expected = combo(
            (f * Fraction(3, 28) * (A - 2) * (A - 3) * (A - 4) * (A - 5) * (A - 6) * (A - 7), E18),
            (f * -9 * (A - 2) * (A - 3) * (A - 4) * (A - 5), E14_22),
            (f * Fraction(3, 5) * b * (A - 2) * (A - 3) * (A - 4) * (A - 5), E16, E12),
            (f * -24 * (A - 2) * (A - 3) * (A - 4), E12_23),
            (f * -9 * (A - 2) * (A - 3), E24),
            (f * 12 * (A - 2) * (A - 3), E12_32),
            (f * -18 * b * (A - 2) * (A - 3), E12, E12_22),
            (f * 3 * b * b * (A - 2) * (A - 3), E12, E12, E14),
            (f * Fraction(1, 4) * b * (A - 2) * (A - 2) * (A - 3) * (A - 3), E14, E14),
            (f * -3 * b * (A - 2) * (A - 3), E14, E22),
            (f * 24 * (A - 2), E21_32),
            (f * -12 * b * (A - 2), E23, E12),
            (f * -6, E42),
            (f * 12 * b, E12, E32),
            (f * 9 * b, E22, E22),
            (f * -18 * b * b, E12, E12, E22),
            (f * Fraction(9, 2) * b * b * b, E12, E12, E12, E12),
        )
        result = entropy_derivative(EntropyKind.RENYI, 4)
        assert result.expr == expected
        assert result.sign == -1

    def test_tsallis_fourth_derivative(self):
        """測試 Tsallis 第四階導數"""
        f = A / 12
        expected = combo(
            (f * Fraction(3, 28) * (A - 2) * (A - 3) * (A - 4) * (A - 5) * (A - 6) * (A - 7), E18),
            (f * -9 * (A - 2) * (A - 3) * (A - 4) * (A - 5), E14_22),
            (f * -24 * (A - 2) * (A - 3) * (A - 4), E12_23),
            (f * -9 * (A - 2) * (A - 3), E24),
            (f * 12 * (A - 2) * (A - 3), E12_32),
            (f * 24 * (A - 2), E21_32),
            (f * -6, E42),
        )
        result = entropy_derivative(EntropyKind.TSALLIS, 4)
        assert result.expr == expected
        assert result.normalizer_power == 1
        assert result.expr.is_product_free

    def test_shannon_first_derivative(self):
        """測試 Shannon:½J(X_t)"""
        result = entropy_derivative(EntropyKind.SHANNON, 1)
        assert result.expr == combo((Fraction(1, 2), E12))
        assert all(term.coefficient.is_constant for term in result.expr)

    def test_shannon_is_alpha_one(self):
        """測試 Shannon 為 Rényi 代入 α = 1"""
        renyi = entropy_derivative(EntropyKind.RENYI, 3).expr
        assert entropy_derivative(EntropyKind.SHANNON, 3).expr == renyi.substitute_alpha(1)

    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    def test_total_order_even(self, order):
        """測試第 k 階的每一項總階數為 2k"""
        expr = entropy_derivative(EntropyKind.RENYI, order).expr
        assert expr.total_orders() == [2 * order]

    def test_renyi_from_tsallis(self):
        """測試 Rényi 與 Tsallis 導數族的關係式"""
        tsallis = [entropy_derivative(EntropyKind.TSALLIS, k).expr for k in range(1, 5)]
        renyi = renyi_from_tsallis(tsallis, 1 - A)
        for k in range(1, 5):
            assert renyi[k - 1] == entropy_derivative(EntropyKind.RENYI, k).expr

    def test_renyi_from_tsallis_floats(self):
        """測試關係式也適用於浮點數"""
        h = renyi_from_tsallis([2.0, 3.0], 0.5)
        assert h == [2.0, 3.0 - 0.5 * 2.0 * 2.0]

    def test_invalid_order(self):
        """測試階數必須 ≥ 1"""
        with pytest.raises(ValueError):
            entropy_derivative(EntropyKind.RENYI, 0)

    def test_resource_limit(self):
        """測試超過階數上限"""
        with pytest.raises(ResourceLimit):
            entropy_derivative(EntropyKind.RENYI, 5, max_order=4)

    def test_term_limit(self):
        """測試超過項數上限"""
        calculus = HeatCalculus(Settings(MAX_CANONICAL_TERMS=3))
        with pytest.raises(ResourceLimit):
            calculus.derive(EntropyKind.RENYI, 3)


class TestPowerConcavity:
    """測試熵冪凹性目標"""

    def test_half(self):
        """測試 β = 1/2 除以 α 後的形式"""
        expected = combo(
            ((A - 2) * (A - 3) / 12, E14),
            (Fraction(-1, 2), E22),
            (A * A / 4, E12, E12),
        )
        assert power_concavity_expr(Fraction(1, 2)).exact_div(A) == expected

    def test_zero_beta(self):
        """測試 β = 0 只剩 h″"""
        assert power_concavity_expr(0) == entropy_derivative(EntropyKind.RENYI, 2).expr

    def test_alpha_dependent_beta(self):
        """測試 β = (α+1)/2"""
        h1 = entropy_derivative(EntropyKind.RENYI, 1).expr
        h2 = entropy_derivative(EntropyKind.RENYI, 2).expr
        assert power_concavity_expr((A + 1) / 2) == h2 + (h1 * h1).scale(A + 1)
