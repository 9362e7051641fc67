"""測試參數曲線擬合"""

from fractions import Fraction

import pytest

from src.core import fit_parameter_table, fit_samples, round_to_denominator
from src.models import AlphaPoly

L1 = [
    (0.4, 1.58125),
    (0.5, 1.53958),
    (0.6, 1.38319),
    (0.7, 1.12931),
    (0.8, 0.800784),
    (0.9, 0.414932),
    (1.0, 0.000135571),
]

L3 = [(1.75, -0.961764), (1.85, -0.588612), (1.95, -0.206353), (1.99, -0.038556), (2.0, 0.0)]


class TestFitSamples:
    """測試單一參數擬合"""

    def test_fourth_order_fit(self):
        """測試 k=3 第一個參數的四次擬合"""
        poly = fit_samples(L1, degree=4, denominator=10)
        assert poly == AlphaPoly(tuple(Fraction(v) for v in ("0.3", "6.4", "-8.7", "1.1", "0.8")))

    def test_pinned_quadratic_fit(self):
        """測試 α=2 的已知值當作一般樣本時,二次擬合係數誤差在 1/10000 內"""
        poly = fit_samples(L3[:-1], degree=2, denominator=10000, pinned=[(2.0, 0.0)])
        expected = (Fraction(-43159, 10000), Fraction(2316, 10000), Fraction(9631, 10000))
        assert poly.degree == 2
        for got, want in zip(poly.coeffs, expected):
            assert abs(got - want) <= Fraction(1, 10000)

    def test_pinned_same_as_sample(self):
        """測試已知點與樣本點同 α 時不重複計入"""
        assert fit_samples(L3, 2, 10000, pinned=[(2.0, 0.0)]) == fit_samples(L3, 2, 10000)
        assert fit_samples(L3[:-1], 2, 10000, pinned=[(2.0, 0.0)]) == fit_samples(L3, 2, 10000)

    def test_exact_pinned_point(self):
        """測試 exact=True 時擬合曲線精確通過已知點"""
        shifted = [(x, y + 0.01) for x, y in L3[:-1]]
        poly = fit_samples(shifted, degree=2, denominator=10**6, pinned=[(2.0, 0.0)], exact=True)
        assert abs(poly.evaluate_float(2.0)) < 1e-5
        loose = fit_samples(shifted, degree=2, denominator=10**6, pinned=[(2.0, 0.0)])
        assert abs(loose.evaluate_float(2.0)) > 1e-4

    def test_exact_recovery(self):
        """測試樣本恰在多項式上時完全還原"""
        target = AlphaPoly((Fraction(1, 2), Fraction(-3, 10), 1))
        points = [(x, target.evaluate_float(x)) for x in (0.5, 0.75, 1.0, 1.25, 1.5, 2.0)]
        assert fit_samples(points, degree=2, denominator=10) == target

    def test_unsorted_input(self):
        """測試輸入順序不影響結果"""
        assert fit_samples(list(reversed(L1)), 4, 10) == fit_samples(L1, 4, 10)

    def test_too_few_points(self):
        """測試點數不足"""
        with pytest.raises(ValueError):
            fit_samples(L1[:3], degree=4, denominator=10)

    def test_invalid_denominator(self):
        """測試分母必須為正"""
        with pytest.raises(ValueError):
            fit_samples(L1, degree=2, denominator=0)

    def test_round_to_denominator(self):
        """測試有理化"""
        assert round_to_denominator(0.26, 10) == Fraction(3, 10)
        assert round_to_denominator(-1.23456, 1000) == Fraction(-1235, 1000)


class TestFitParameterTable:
    """測試多參數擬合"""

    def test_table(self):
        """測試每個參數各自擬合並記錄取樣格點"""
        table = {
            "a": [(x, 2 * x) for x in (0.5, 1.0, 1.5)],
            "b": [(x, 1 - x) for x in (0.5, 1.0, 1.5)],
        }
        fitted = fit_parameter_table(table, degree=1, denominator=10)
        assert fitted.names() == ["a", "b"]
        assert fitted["a"] == AlphaPoly((0, 2))
        assert fitted["b"] == AlphaPoly((1, -1))
        assert fitted.alpha_grid == (0.5, 1.0, 1.5)
        assert fitted.round_denominator == 10

    def test_table_with_pinned(self):
        """測試只有指定參數套用固定點"""
        fitted = fit_parameter_table({"b": L3[:-1], "c": L3[:-1]}, 2, 10000, pinned={"b": [(2.0, 0.0)]})
        assert abs(fitted["b"].coeffs[0] - Fraction(-43159, 10000)) <= Fraction(1, 10000)
        assert fitted["c"] != fitted["b"]
