"""測試 α 多項式"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models import AlphaPoly

A = AlphaPoly.alpha()

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, max_size=5).map(lambda cs: AlphaPoly(tuple(cs)))


class TestAlphaPolyBasics:
    """測試建構與基本屬性"""

    def test_trailing_zeros_removed(self):
        """測試最高次零係數會被去除"""
        p = AlphaPoly((1, 2, 0, 0))
        assert p.coeffs == (Fraction(1), Fraction(2))
        assert p.degree == 1

    def test_zero_polynomial(self):
        """測試零多項式"""
        zero = AlphaPoly.zero()
        assert zero.is_zero
        assert zero.degree == -1
        assert not zero
        assert str(zero) == "0"

    def test_float_coefficient_rejected(self):
        """測試拒絕浮點係數"""
        with pytest.raises(TypeError):
            AlphaPoly((0.5,))

    def test_strings_roundtrip(self):
        """測試 "p/q" 字串表示"""
        p = AlphaPoly((Fraction(3, 10), Fraction(-87, 10), 4))
        assert p.to_strings() == ["3/10", "-87/10", "4/1"]
        assert AlphaPoly.from_strings(p.to_strings()) == p

    def test_invalid_strings(self):
        """測試無效的係數字串"""
        with pytest.raises(ValueError):
            AlphaPoly.from_strings(["1/0"])

    def test_render(self):
        """測試文字呈現"""
        assert str(A * A - 3 * A + 2) == "2 - 3·α + α^2"
        assert str(-A) == "-α"


class TestAlphaPolyArithmetic:
    """測試環運算與求值"""

    def test_product_of_linear_factors(self):
        """測試 (α − 2)(α − 3)"""
        p = (A - 2) * (A - 3)
        assert p == AlphaPoly((6, -5, 1))
        assert p.evaluate(2) == 0
        assert p.evaluate(Fraction(5, 2)) == Fraction(-1, 4)

    def test_evaluate_float_matches_exact(self):
        """測試浮點求值與精確求值一致"""
        p = AlphaPoly((Fraction(1, 3), -2, Fraction(7, 5)))
        assert p.evaluate_float(0.75) == pytest.approx(float(p.evaluate(Fraction(3, 4))))

    def test_power(self):
        """測試整數次方"""
        assert (A + 1) ** 3 == AlphaPoly((1, 3, 3, 1))
        assert (A + 1) ** 0 == AlphaPoly.one()
        with pytest.raises(ValueError):
            A ** -1

    def test_scalar_division(self):
        """測試除以純量"""
        assert (2 * A + 4) / 2 == A + 2
        with pytest.raises(ZeroDivisionError):
            A / 0

    def test_divmod(self):
        """測試帶餘除法"""
        q, r = (A**3 + 2 * A + 5).divmod(A - 1)
        assert q == A * A + A + 3
        assert r == AlphaPoly.constant(8)

    def test_exact_div(self):
        """測試整除與不能整除"""
        assert ((A - 2) * (A + 5)).exact_div(A - 2) == A + 5
        with pytest.raises(ValueError):
            (A * A + 1).exact_div(A - 1)

    def test_gcd_and_square_free(self):
        """測試最大公因式與無平方部分"""
        p = (A - 1) ** 2 * (A + 2)
        assert p.gcd(p.derivative()) == A - 1
        assert p.square_free_part() == (A - 1) * (A + 2)

    def test_sign_at(self):
        """測試符號"""
        p = A - Fraction(1, 2)
        assert p.sign_at(0) == -1
        assert p.sign_at(Fraction(1, 2)) == 0
        assert p.sign_at(1) == 1

    def test_content_denominator(self):
        """測試係數分母的最小公倍數"""
        assert AlphaPoly((Fraction(1, 4), Fraction(1, 6))).content_denominator() == 12

    def test_primitive(self):
        """測試互質整數形式保持首項符號"""
        p = AlphaPoly((Fraction(-1, 4), Fraction(1, 6), Fraction(-1, 2)))
        assert p.primitive() == AlphaPoly((-3, 2, -6))
        assert AlphaPoly((4, 6)).primitive() == AlphaPoly((2, 3))
        assert AlphaPoly.zero().primitive().is_zero


class TestAlphaPolyProperties:
    """測試環公理 (性質測試)"""

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_ring_laws(self, p, q, r):
        """測試交換律、結合律與分配律"""
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == AlphaPoly.zero()

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, rationals)
    def test_evaluation_is_homomorphism(self, p, q, x):
        """測試求值保持加法與乘法"""
        assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
        assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)

    @settings(max_examples=60, deadline=None)
    @given(polys, rationals)
    def test_sign_at_matches_evaluate(self, p, x):
        """測試整數齊次求值的符號與精確求值一致"""
        value = p.evaluate(x)
        assert p.sign_at(x) == (value > 0) - (value < 0)

    @settings(max_examples=60, deadline=None)
    @given(polys, polys)
    def test_divmod_identity(self, p, q):
        """測試 p = q·商 + 餘,且餘式次數小於除式"""
        if q.is_zero:
            return
        quotient, remainder = p.divmod(q)
        assert quotient * q + remainder == p
        assert remainder.degree < q.degree or remainder.is_zero
