"""測試 Sturm 根計數與根隔離"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.core import (
    assemble_matrix,
    build_gram_problem,
    default_gram_basis,
    entropy_derivative,
    isolate_roots,
    known_certificate,
    principal_minors,
    sturm_chain,
    sturm_root_count,
)
from src.errors import EndpointRoot
from src.models import AlphaPoly

A = AlphaPoly.alpha()
x = sympy.Symbol("x")

# 9x³ − 12x² + 29x − 10 在 (0, 1) 內唯一實根
BETA0_POLY = AlphaPoly((-10, 29, -12, 9))


class TestSturmRootCount:
    """測試開區間相異實根計數"""

    def test_no_real_roots(self):
        """測試 x² + 1"""
        assert sturm_root_count(A * A + 1, (-10, 10)) == 0

    def test_repeated_root_counted_once(self):
        """測試重根只算一次"""
        p = (A - 1) ** 3 * (A + 2)
        assert sturm_root_count(p, (0, 2)) == 1
        assert sturm_root_count(p, (-3, 2)) == 2

    def test_constant(self):
        """測試非零常數沒有根"""
        assert sturm_root_count(AlphaPoly.constant(3), (0, 1)) == 0

    def test_endpoint_root(self):
        """測試端點為根"""
        with pytest.raises(EndpointRoot):
            sturm_root_count(A - 1, (1, 2))

    def test_invalid_inputs(self):
        """測試零多項式與無效區間"""
        with pytest.raises(ValueError):
            sturm_root_count(AlphaPoly.zero(), (0, 1))
        with pytest.raises(ValueError):
            sturm_root_count(A, (1, 0))

    def test_chain_ends_with_constant(self):
        """測試無平方多項式的 Sturm 序列以非零常數結尾"""
        chain = sturm_chain(BETA0_POLY)
        assert chain[0] == BETA0_POLY
        assert chain[-1].is_constant and not chain[-1].is_zero

    def test_chain_is_primitive(self):
        """測試序列每一項都是互質整數係數"""
        p = AlphaPoly((Fraction(1, 3), Fraction(-7, 5), Fraction(2, 9), Fraction(11, 4), 1))
        for q in sturm_chain(p):
            assert all(c.denominator == 1 for c in q.coeffs)
            assert q == q.primitive()

    def test_high_degree_root_count(self):
        """測試三十個相近有理根的計數"""
        p = AlphaPoly.one()
        for k in range(1, 31):
            p = p * AlphaPoly.linear(Fraction(k, 37))
        assert sturm_root_count(p, (0, 1)) == 30
        assert sturm_root_count(p, (Fraction(1, 74), Fraction(21, 74))) == 10

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.integers(-6, 6), min_size=2, max_size=6),
        st.fractions(min_value=-4, max_value=0, max_denominator=4),
        st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4),
    )
    def test_matches_sympy(self, coeffs, lo, hi):
        """測試與 sympy 的實根一致"""
        p = AlphaPoly(tuple(coeffs))
        assume(not p.is_zero and p.evaluate(lo) != 0 and p.evaluate(hi) != 0)
        expr = sum(c * x**i for i, c in enumerate(coeffs))
        roots = set(sympy.Poly(expr, x).real_roots()) if p.degree >= 1 else set()
        inside = [r for r in roots if sympy.Rational(lo.numerator, lo.denominator) < r < sympy.Rational(hi.numerator, hi.denominator)]
        assert sturm_root_count(p, (lo, hi)) == len(inside)


class TestIsolateRoots:
    """測試根隔離"""

    def test_beta0(self):
        """測試 β₀ ≈ 0.38921378 的隔離區間"""
        intervals = isolate_roots(BETA0_POLY, (0, 1), Fraction(1, 10**6))
        assert len(intervals) == 1
        lo, hi = intervals[0]
        assert Fraction(38921, 100000) <= lo <= hi <= Fraction(38922, 100000)

    def test_root_at_bisection_point(self):
        """測試根恰在二分點時回傳退化區間"""
        assert isolate_roots(A - Fraction(1, 2), (0, 1)) == [(Fraction(1, 2), Fraction(1, 2))]

    def test_sorted_disjoint(self):
        """測試多個根的隔離區間排序且互斥"""
        p = (A - Fraction(1, 3)) * (A - Fraction(2, 3)) * (A + Fraction(1, 7))
        intervals = isolate_roots(p, (-1, 1), Fraction(1, 1000))
        assert len(intervals) == 3
        for (a, b), (c, d) in zip(intervals, intervals[1:]):
            assert b <= c
        for a, b in intervals:
            assert b - a <= Fraction(1, 1000)

    def test_float_endpoints(self):
        """測試浮點端點以十進位字串轉換"""
        assert isolate_roots(A * A - 2, (1.4, 1.5), Fraction(1, 100))

    def test_endpoint_root(self):
        """測試端點為根"""
        with pytest.raises(EndpointRoot):
            isolate_roots(A * (A - 1), (0, 1))

    def test_renyi4_second_minor_roots(self):
        """測試第四階 Rényi 十維矩陣二階主子式的兩個實根"""
        known = known_certificate("renyi4-hat")
        problem = build_gram_problem(
            entropy_derivative(known.kind, known.order), default_gram_basis(known.order, known.kind)
        )
        matrix = assemble_matrix(known.fitted(), problem)
        second = principal_minors(matrix.submatrix(range(2)))[1]
        intervals = isolate_roots(second, (0, 3), Fraction(1, 1000))
        assert any(Fraction(74, 100) <= a and b <= Fraction(75, 100) for a, b in intervals)
        assert any(Fraction(238, 100) <= a and b <= Fraction(239, 100) for a, b in intervals)
        assert sturm_root_count(second, known.interval) == 0
