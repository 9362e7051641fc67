"""測試 SDP 可行性求解"""

from unittest.mock import patch

import cvxpy as cp
import numpy as np
import pytest

from src.config import Settings
from src.core import build_gram_problem, default_gram_basis, entropy_derivative
from src.errors import NumericalFailure
from src.models import EntropyKind, FeasiblePoint, Infeasible
from src.services import SdpSolver


def problem_for(order: int, kind: EntropyKind = EntropyKind.RENYI):
    return build_gram_problem(entropy_derivative(kind, order), default_gram_basis(order, kind))


@pytest.fixture(scope="module")
def solver():
    return SdpSolver(Settings())


class TestPinnedRows:
    """測試被方程強制為零的列"""

    def test_third_order_at_one(self, solver):
        """測試 α=1 時第四列被固定為零"""
        problem = problem_for(3)
        matrix, rhs = problem.numeric_system(1.0)
        assert solver._pinned_rows(problem, matrix, rhs) == {3}

    def test_third_order_generic(self, solver):
        """測試一般 α 沒有固定列"""
        problem = problem_for(3)
        matrix, rhs = problem.numeric_system(0.7)
        assert solver._pinned_rows(problem, matrix, rhs) == set()


class TestClassify:
    """測試可行點的判定與 margin 定義"""

    def test_min_eigenvalue_includes_pinned_rows(self):
        """測試 min_eigenvalue 涵蓋整個矩陣,固定為零的列使其為 0"""
        point = FeasiblePoint(1.0, np.diag([2.0, 0.5, 0.0]), {}, 0.5, 0.0)
        assert point.min_eigenvalue == pytest.approx(0.0)
        assert point.margin == 0.5

    def test_free_block_margin_reported(self, solver):
        """測試 _point 的 margin 只看自由列,min_eigenvalue 看整個矩陣"""
        problem = problem_for(3)
        matrix, rhs = problem.numeric_system(1.0)
        free_rows = [0, 1, 2]
        _, layout = solver._reduced_columns(problem, free_rows)
        vector = np.zeros(len(layout))
        for i in free_rows:
            vector[layout[f"g{i + 1},{i + 1}"]] = 1.0
        point = solver._point(problem, 1.0, free_rows, layout, vector, matrix, rhs)
        assert point.margin == pytest.approx(1.0)
        assert point.min_eigenvalue == pytest.approx(0.0)
        assert np.all(point.gram[3] == 0)

    def test_indefinite_full_matrix_rejected(self, solver):
        """測試自由子矩陣正定但整個矩陣有負特徵值時判為不可行"""
        point = FeasiblePoint(1.0, np.diag([1.0, -1e-3]), {}, 1.0, 0.0)
        result = solver._classify(point)
        assert isinstance(result, Infeasible)
        assert result.violation == pytest.approx(1e-3)

    def test_feasible_point_accepted(self, solver):
        """測試殘差、特徵值與鬆弛都在容許誤差內"""
        point = FeasiblePoint(1.0, np.eye(2), {"d": 0.0}, 1.0, 0.0)
        assert solver._classify(point) is point


class TestSolverFailure:
    """測試求解器錯誤"""

    def test_both_solvers_fail(self, solver):
        """測試主要與備用求解器都失敗"""
        with patch.object(cp.Problem, "solve", side_effect=cp.error.SolverError("boom")):
            with pytest.raises(NumericalFailure):
                solver.solve_feasibility(problem_for(2), 1.0)


@pytest.mark.slow
class TestSolveFeasibility:
    """實際求解 (需要 CLARABEL/SCS)"""

    @pytest.mark.parametrize("alpha", [0.2, 0.5, 1.0, 2.0])
    def test_second_order_feasible(self, solver, alpha):
        """測試 k=2 在 0 < α < 3 嚴格可行"""
        result = solver.solve_feasibility(problem_for(2), alpha)
        assert isinstance(result, FeasiblePoint)
        assert result.residual <= 1e-9
        assert result.margin > 1e-8
        assert np.allclose(result.gram, result.gram.T)

    def test_second_order_boundary(self, solver):
        """測試 k=2 在 α = 3 仍可行 (半正定)"""
        result = solver.solve_feasibility(problem_for(2), 3.0)
        assert isinstance(result, FeasiblePoint)
        assert result.min_eigenvalue >= -1e-9

    def test_second_order_infeasible(self, solver):
        """測試 k=2 在 α=8 不可行並帶回最接近的點"""
        result = solver.solve_feasibility(problem_for(2), 8.0)
        assert isinstance(result, Infeasible)
        assert result.violation > 0

    @pytest.mark.parametrize("alpha", [0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0])
    def test_third_order_feasible(self, solver, alpha):
        """測試 k=3 在取樣格點可行,鬆弛係數非負"""
        result = solver.solve_feasibility(problem_for(3), alpha)
        assert isinstance(result, FeasiblePoint)
        assert min(result.slacks.values()) >= -1e-12

    def test_third_order_zero_row(self, solver):
        """測試 α=1 的解第四列為零"""
        result = solver.solve_feasibility(problem_for(3), 1.0)
        assert isinstance(result, FeasiblePoint)
        assert np.all(result.gram[3] == 0)
