"""測試 Gram 多項式矩陣的組裝"""

from fractions import Fraction

import pytest

from src.core import (
    assemble_matrix,
    build_gram_problem,
    default_gram_basis,
    entropy_derivative,
    known_certificate,
    resolve_parameters,
    slack_polynomials,
)
from src.errors import UnresolvedParameter
from src.models import AlphaPoly, EntropyKind

A = AlphaPoly.alpha()


def problem_for(kind: EntropyKind, order: int):
    return build_gram_problem(entropy_derivative(kind, order), default_gram_basis(order, kind))


@pytest.fixture(scope="module")
def renyi3():
    return problem_for(EntropyKind.RENYI, 3)


@pytest.fixture(scope="module")
def tsallis4():
    return problem_for(EntropyKind.TSALLIS, 4)


class TestAssembleMatrix:
    """測試由自由參數組出完整矩陣"""

    def test_renyi3_hat_entries(self, renyi3):
        """測試第一列的固定元素"""
        m = assemble_matrix(known_certificate("renyi3-hat").fitted(), renyi3)
        assert m.size == 4
        assert m[0, 0] == AlphaPoly.constant(6)
        assert m[0, 1] == 6 * (A - 2)
        assert m[0, 2] == known_certificate("renyi3-hat").fitted()["g1,3"]

    def test_renyi3_tilde_at_one(self, renyi3):
        """測試 α = 1 時的數值矩陣,第四列為零"""
        m = assemble_matrix(known_certificate("renyi3-tilde").fitted(), renyi3)
        expected = [
            [6, -6, Fraction(5, 2), 0],
            [-6, 9, -5, 0],
            [Fraction(5, 2), -5, Fraction(16, 5), 0],
            [0, 0, 0, 0],
        ]
        assert m.evaluate(1) == expected

    def test_tsallis4_tilde_at_two(self, tsallis4):
        """測試 α = 2 時只剩 (1,1) 元素"""
        m = assemble_matrix(known_certificate("tsallis4-tilde").fitted(), tsallis4)
        expected = [[0] * 5 for _ in range(5)]
        expected[0][0] = 6
        assert m.evaluate(2) == expected

    def test_symmetric(self, tsallis4):
        """測試組出的矩陣對稱"""
        m = assemble_matrix(known_certificate("tsallis4-hat").fitted(), tsallis4)
        assert all(m[i, j] == m[j, i] for i in range(5) for j in range(5))

    def test_slack_polynomials(self, renyi3):
        """測試鬆弛係數依定義順序回傳"""
        fitted = known_certificate("renyi3-hat").fitted()
        assert slack_polynomials(fitted, renyi3) == [fitted["d"], fitted["e"]]


class TestResolveParameters:
    """測試相依未知數的求解與錯誤"""

    def test_all_unknowns_resolved(self, renyi3):
        """測試每個未知數都有值"""
        values = resolve_parameters(known_certificate("renyi3-hat").fitted(), renyi3)
        assert list(values) == renyi3.unknowns

    def test_missing_free_parameter(self, renyi3):
        """測試缺少自由參數"""
        params = dict(known_certificate("renyi3-hat").fitted().params)
        del params["e"]
        with pytest.raises(UnresolvedParameter):
            assemble_matrix(params, renyi3)

    def test_foreign_parameter(self, renyi3):
        """測試不屬於問題的參數名稱"""
        params = dict(known_certificate("renyi3-hat").fitted().params)
        params["zz"] = AlphaPoly.one()
        with pytest.raises(UnresolvedParameter):
            resolve_parameters(params, renyi3)

    def test_overdetermined_inconsistent(self, renyi3):
        """測試給定相依元素且與方程矛盾"""
        params = dict(known_certificate("renyi3-hat").fitted().params)
        params["g1,1"] = AlphaPoly.constant(7)
        with pytest.raises(UnresolvedParameter):
            resolve_parameters(params, renyi3)
