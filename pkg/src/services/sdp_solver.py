"""SDP 可行性求解服務 (cvxpy)"""

import logging
from typing import Dict, List, Optional, Set, Tuple, Union

import cvxpy as cp
import numpy as np

from ..config import Settings
from ..errors import NumericalFailure
from ..models import FeasiblePoint, GramProblem, Infeasible, entry_name

logger = logging.getLogger(__name__)

SolveResult = Union[FeasiblePoint, Infeasible]

_OPTIMAL = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)
_INFEASIBLE = (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE)


class SdpSolver:
    """在固定 α 求解 Gram 矩陣匹配問題"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    # ------------------------------------------------------------------
    # 對外介面
    # ------------------------------------------------------------------

    def solve_feasibility(self, problem: GramProblem, alpha: float) -> SolveResult:
        """
        最大化 Gram 矩陣最小特徵值 t 的可行性問題

        被方程強制為零的對角元素所在的列整列固定為零,其餘區塊要求 A − tI ⪰ 0,
        t ≤ SDP_MARGIN_CAP。解出後以最小範數最小平方修正投影回仿射集合。

        Args:
            problem: Gram 匹配問題
            alpha: 取樣的 α

        Returns:
            FeasiblePoint 或 Infeasible

        Raises:
            NumericalFailure: 主要與備用求解器都無法給出可用的狀態
        """
        matrix, rhs = problem.numeric_system(alpha)
        pinned = self._pinned_rows(problem, matrix, rhs)
        free_rows = [i for i in range(problem.size) if i not in pinned]
        if pinned:
            logger.debug(f"α={alpha:g}: 固定為零的列 {sorted(i + 1 for i in pinned)}")

        columns, layout = self._reduced_columns(problem, free_rows)
        reduced = matrix[:, columns] if columns else np.zeros((len(rhs), 0))

        block, _, stacked = self._variables(problem, free_rows, layout)
        margin = cp.Variable()
        constraints: list = []
        if stacked is not None:
            constraints.append(reduced @ stacked == rhs)
        elif np.any(np.abs(rhs) > self.settings.SDP_RESIDUAL_TOL):
            return Infeasible(alpha, None, float(np.max(np.abs(rhs))), "所有未知數皆被固定為零")
        if block is not None:
            constraints += [block - margin * np.eye(len(free_rows)) >> 0, margin <= self.settings.SDP_MARGIN_CAP]
        else:
            constraints.append(margin == 0)

        status = self._solve(cp.Problem(cp.Maximize(margin), constraints), alpha)
        if status in _INFEASIBLE:
            logger.info(f"✗ α={alpha:g} 不可行,計算最接近的點")
            return self._nearest_point(problem, alpha, matrix, rhs, reduced, free_rows, layout)

        vector = self._polish(reduced, rhs, stacked.value if stacked is not None else np.zeros(0))
        point = self._point(problem, alpha, free_rows, layout, vector, matrix, rhs)
        return self._classify(point)

    # ------------------------------------------------------------------
    # 建構
    # ------------------------------------------------------------------

    def _pinned_rows(self, problem: GramProblem, matrix: np.ndarray, rhs: np.ndarray) -> Set[int]:
        """只含單一對角元素且右邊為零的方程,使該列整列為零"""
        names = problem.unknowns
        tol = self.settings.SDP_RESIDUAL_TOL
        pinned: Set[int] = set()
        for row, value in zip(matrix, rhs):
            support = np.flatnonzero(np.abs(row) > tol)
            if len(support) != 1 or abs(value) > tol:
                continue
            name = names[support[0]]
            if name.startswith("g"):
                i, j = problem.entry_index(name)
                if i == j:
                    pinned.add(i)
        return pinned

    def _reduced_columns(self, problem: GramProblem, free_rows: List[int]) -> Tuple[List[int], Dict[str, int]]:
        """未被固定的未知數欄位,以及名稱 → 縮減後位置"""
        free = set(free_rows)
        columns: List[int] = []
        layout: Dict[str, int] = {}
        for index, name in enumerate(problem.unknowns):
            if name.startswith("g"):
                i, j = problem.entry_index(name)
                if i not in free or j not in free:
                    continue
            layout[name] = len(columns)
            columns.append(index)
        return columns, layout

    def _variables(self, problem: GramProblem, free_rows: List[int], layout: Dict[str, int]):
        """自由區塊的對稱矩陣變數、鬆弛變數,以及依 layout 堆疊的向量"""
        block = cp.Variable((len(free_rows), len(free_rows)), symmetric=True) if free_rows else None
        slacks = cp.Variable(len(problem.slack_terms), nonneg=True) if problem.slack_terms else None
        position = {row: k for k, row in enumerate(free_rows)}
        entries = []
        for name in layout:
            if name.startswith("g"):
                i, j = problem.entry_index(name)
                entries.append(block[position[i], position[j]])
            else:
                entries.append(slacks[problem.slack_names.index(name)])
        stacked = cp.hstack(entries) if entries else None
        return block, slacks, stacked

    # ------------------------------------------------------------------
    # 求解
    # ------------------------------------------------------------------

    def _solve(self, program: cp.Problem, alpha: float) -> str:
        """主要求解器失敗時改用備用求解器"""
        last_error: Optional[Exception] = None
        for solver in (self.settings.SDP_SOLVER, self.settings.SDP_FALLBACK_SOLVER):
            try:
                program.solve(solver=solver)
            except cp.error.SolverError as e:
                logger.warning(f"求解器 {solver} 在 α={alpha:g} 失敗: {e}")
                last_error = e
                continue
            if program.status in _OPTIMAL or program.status in _INFEASIBLE:
                logger.debug(f"α={alpha:g} {solver}: {program.status}, t={program.value}")
                return program.status
            logger.warning(f"求解器 {solver} 在 α={alpha:g} 回傳狀態 {program.status}")
        message = f"α={alpha:g} 的 SDP 無法求解"
        if last_error is not None:
            raise NumericalFailure(message) from last_error
        raise NumericalFailure(f"{message} (狀態 {program.status})")

    def _nearest_point(
        self,
        problem: GramProblem,
        alpha: float,
        matrix: np.ndarray,
        rhs: np.ndarray,
        reduced: np.ndarray,
        free_rows: List[int],
        layout: Dict[str, int],
    ) -> Infeasible:
        """第二階段:A ⪰ 0、鬆弛 ≥ 0 下最小化方程殘差"""
        block, _, stacked = self._variables(problem, free_rows, layout)
        constraints = [block >> 0] if block is not None else []
        if stacked is None:
            return Infeasible(alpha, None, float(np.max(np.abs(rhs))), "沒有自由未知數")
        program = cp.Problem(cp.Minimize(cp.norm(reduced @ stacked - rhs, 2)), constraints)
        try:
            status = self._solve(program, alpha)
        except NumericalFailure as e:
            return Infeasible(alpha, None, float("inf"), str(e))
        if status not in _OPTIMAL:
            return Infeasible(alpha, None, float("inf"), f"最近點問題狀態 {status}")
        point = self._point(problem, alpha, free_rows, layout, np.asarray(stacked.value, dtype=float), matrix, rhs)
        violation = max(point.residual, -min(point.margin, 0.0))
        return Infeasible(alpha, point, violation, "SDP 不可行")

    # ------------------------------------------------------------------
    # 後處理
    # ------------------------------------------------------------------

    @staticmethod
    def _polish(reduced: np.ndarray, rhs: np.ndarray, vector) -> np.ndarray:
        """最小範數修正,使仿射方程在浮點精度內成立"""
        vector = np.asarray(vector, dtype=float).reshape(-1)
        if not vector.size:
            return vector
        correction, *_ = np.linalg.lstsq(reduced, rhs - reduced @ vector, rcond=None)
        return vector + correction

    @staticmethod
    def _point(
        problem: GramProblem,
        alpha: float,
        free_rows: List[int],
        layout: Dict[str, int],
        vector: np.ndarray,
        matrix: np.ndarray,
        rhs: np.ndarray,
    ) -> FeasiblePoint:
        n = problem.size
        gram = np.zeros((n, n))
        for i in range(n):
            for j in range(i, n):
                position = layout.get(entry_name(i, j))
                if position is not None:
                    gram[i, j] = gram[j, i] = vector[position]
        slacks = {name: float(vector[layout[name]]) for name in problem.slack_names}

        free_block = gram[np.ix_(free_rows, free_rows)]
        margin = float(np.linalg.eigvalsh(free_block).min()) if free_rows else 0.0
        full = np.array(
            [gram[problem.entry_index(name)] if name.startswith("g") else slacks[name] for name in problem.unknowns]
        )
        residual = float(np.max(np.abs(matrix @ full - rhs))) if len(rhs) else 0.0
        return FeasiblePoint(alpha, gram, slacks, margin, residual)

    def _classify(self, point: FeasiblePoint) -> SolveResult:
        s = self.settings
        slack_floor = min(point.slacks.values(), default=0.0)
        floor = min(point.margin, point.min_eigenvalue)
        if point.residual <= s.SDP_RESIDUAL_TOL and floor >= -s.SDP_MARGIN_TOL and slack_floor >= -s.SDP_SLACK_TOL:
            logger.info(f"✓ α={point.alpha:g} 可行,margin={point.margin:.3e}")
            return point
        violation = max(point.residual, -min(floor, 0.0), -min(slack_floor, 0.0))
        logger.info(f"✗ α={point.alpha:g} 修正後不滿足容許誤差 (違反量 {violation:.3e})")
        return Infeasible(point.alpha, point, violation, "修正後的點不滿足容許誤差")
