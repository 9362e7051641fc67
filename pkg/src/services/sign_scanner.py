"""完全單調性的符號掃描服務"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import Settings
from ..errors import EntropyFlowError
from ..models import EntropyKind, EvalPoint, MixtureDensity, ScanSeries, SignScanReport, ViolationBracket
from ..models.mixture import parse_grid
from .derivative_evaluator import DerivativeEvaluator, DerivativeSeries

logger = logging.getLogger(__name__)

CellResult = Union[DerivativeSeries, str]


def make_t_grid(t_min: float, t_max: float, points: int, log_grid: bool = False) -> Tuple[float, ...]:
    """
    掃描用的 t 格點

    Raises:
        ValueError: 範圍或點數無效
    """
    if t_min <= 0 or t_max <= t_min or points < 2:
        raise ValueError(f"需要 0 < t_min < t_max 且至少 2 點: ({t_min}, {t_max}, {points})")
    grid = np.geomspace(t_min, t_max, points) if log_grid else np.linspace(t_min, t_max, points)
    return parse_grid(grid.tolist())


class SignScanner:
    """在 (k, α, t) 格點上檢查 (−1)^{k−1}·∂ᵏh/∂tᵏ ≥ 0"""

    def __init__(self, settings: Optional[Settings] = None, evaluator: Optional[DerivativeEvaluator] = None):
        self.settings = settings or Settings()
        self.evaluator = evaluator or DerivativeEvaluator(self.settings)


    def scan_signs(
        self,
        d: MixtureDensity,
        kind: EntropyKind,
        orders: Iterable[int],
        alphas: Iterable[float],
        t_grid: Sequence[float],
    ) -> SignScanReport:
        """
        掃描並回報違反符號的 t 區間

        每個 (α, t) 以引擎路線一次算出 1..max(orders) 階;相鄰格點之間另取
        SCAN_REFINE_POINTS 個細分點,找出比格距窄的違反區間。被標記的點再以譜路線確認,
        之後以二分法把區間縮到 BRACKET_WIDTH。單一格點的錯誤只記錄在該序列中。

        Returns:
            SignScanReport
        """
        kind = EntropyKind.parse(kind)
        orders = sorted(set(int(k) for k in orders))
        if not orders or orders[0] < 1:
            raise ValueError(f"導數階數必須 ≥ 1: {orders}")
        grid = parse_grid(t_grid)
        report = SignScanReport(kind, d)
        top = orders[-1]
        fine = self.refine_grid(grid, self.settings.SCAN_REFINE_POINTS)

        for alpha in sorted(set(float(a) for a in alphas)):
            cells = self._evaluate_cells(d, kind, top, alpha, grid + fine)
            coarse = dict(zip(grid, cells[: len(grid)]))
            extra = dict(zip(fine, cells[len(grid):]))
            for order in orders:
                series = self._build_series(d, kind, order, alpha, grid, [coarse[t] for t in grid], extra)
                report.series.append(series)
                status = f"✗ {len(series.violations)} 個違反區間" if series.has_violation else "✓ 無違反"
                logger.info(f"{kind.value} k={order} α={alpha:g}: {status}")
        summary = report.get_summary()
        logger.info(f"掃描完成: {summary['cells']} 格, {summary['violating_pairs']} 組 (k, α) 有違反")
        return report

    @staticmethod
    def refine_grid(grid: Sequence[float], points: int) -> Tuple[float, ...]:
        """相鄰格點之間等距插入 points 個點 (不含格點本身)"""
        if points < 1:
            return ()
        fine: List[float] = []
        for a, b in zip(grid, grid[1:]):
            fine.extend(np.linspace(a, b, points + 2)[1:-1].tolist())
        return tuple(fine)

    # ------------------------------------------------------------------

    def _evaluate_cells(
        self, d: MixtureDensity, kind: EntropyKind, top: int, alpha: float, grid: Sequence[float]
    ) -> List[CellResult]:
        def cell(t: float) -> CellResult:
            try:
                return self.evaluator.engine_series(d, kind, top, EvalPoint(alpha, t))
            except (EntropyFlowError, ValueError, FloatingPointError) as e:
                return f"{type(e).__name__}: {e}"

        workers = max(1, min(self.settings.JOBS, len(grid)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(cell, grid))

    def _is_violation(self, sign: int, value: float, error: float) -> bool:
        return sign * value < 0 and abs(value) > self.settings.VIOLATION_FACTOR * error

    def _build_series(
        self,
        d: MixtureDensity,
        kind: EntropyKind,
        order: int,
        alpha: float,
        grid: Sequence[float],
        cells: Sequence[CellResult],
        extra: Optional[Dict[float, CellResult]] = None,
    ) -> ScanSeries:
        series = ScanSeries(order, alpha, tuple(grid))
        flagged: List[int] = []
        for index, (t, cell) in enumerate(zip(grid, cells)):
            if isinstance(cell, str):
                series.values.append(None)
                series.errors.append(None)
                series.cell_errors.append((t, cell))
                continue
            value, error = cell.value(order), cell.error(order)
            series.values.append(value)
            series.errors.append(error)
            if self._is_violation(series.expected_sign, value, error) and self._confirmed(
                d, kind, order, EvalPoint(alpha, t), series.expected_sign
            ):
                flagged.append(index)

        for run in self._runs(flagged):
            bracket = self._bracket(d, kind, order, alpha, grid, series, run)
            if bracket is not None:
                series.violations.append(bracket)

        if extra:
            for index in range(len(grid) - 1):
                if index in flagged or index + 1 in flagged:
                    continue
                series.violations.extend(self._hidden_windows(d, kind, order, alpha, grid, series, index, extra))
            series.violations.sort(key=lambda b: b.t_lo)
        return series

    def _hidden_windows(
        self,
        d: MixtureDensity,
        kind: EntropyKind,
        order: int,
        alpha: float,
        grid: Sequence[float],
        series: ScanSeries,
        index: int,
        extra: Dict[float, CellResult],
    ) -> List[ViolationBracket]:
        """兩端都未違反的格點區間內,細分點上出現的違反區間 (每段回報進入端)"""
        sign = series.expected_sign
        a, b = grid[index], grid[index + 1]
        inside = sorted(t for t in extra if a < t < b)
        brackets: List[ViolationBracket] = []
        good_t: Optional[float] = a if series.values[index] is not None else None
        in_window = False
        for t in inside:
            cell = extra[t]
            if isinstance(cell, str):
                good_t, in_window = None, False
                continue
            value, error = cell.value(order), cell.error(order)
            if not self._is_violation(sign, value, error):
                good_t, in_window = t, False
                continue
            if in_window or not self._confirmed(d, kind, order, EvalPoint(alpha, t), sign):
                continue
            in_window = True
            logger.debug(f"k={order} α={alpha:g}: 細分點 t={t:g} 違反,格點 {a:g} 與 {b:g} 皆未違反")
            brackets.append(self._edge(d, kind, order, alpha, sign, good_t, t, (value, error)))
        return brackets

    def _spectral(self, d: MixtureDensity, kind: EntropyKind, order: int, at: EvalPoint) -> Optional[float]:
        if order > self.settings.SPECTRAL_MAX_ORDER:
            return None
        try:
            return self.evaluator.spectral(d, kind, order, at)
        except (EntropyFlowError, ValueError, FloatingPointError) as e:
            logger.warning(f"譜路線在 α={at.alpha:g}, t={at.t:g} 失敗: {e}")
            return None

    def _confirmed(self, d: MixtureDensity, kind: EntropyKind, order: int, at: EvalPoint, sign: int) -> bool:
        """譜路線可用時,兩條路線的符號必須一致"""
        spectral = self._spectral(d, kind, order, at)
        if spectral is None or sign * spectral < 0:
            return True
        logger.warning(f"k={order} α={at.alpha:g} t={at.t:g}: 引擎與譜路線符號不一致,不列為違反")
        return False

    @staticmethod
    def _runs(indices: Sequence[int]) -> List[Tuple[int, int]]:
        """連續索引的區段 (首, 尾)"""
        runs: List[Tuple[int, int]] = []
        for i in indices:
            if runs and runs[-1][1] == i - 1:
                runs[-1] = (runs[-1][0], i)
            else:
                runs.append((i, i))
        return runs

    def _bracket(
        self,
        d: MixtureDensity,
        kind: EntropyKind,
        order: int,
        alpha: float,
        grid: Sequence[float],
        series: ScanSeries,
        run: Tuple[int, int],
    ) -> Optional[ViolationBracket]:
        """連續違反格點的邊界:優先取左側未違反的鄰點"""
        sign = series.expected_sign
        first, last = run

        def good_neighbor(index: int) -> bool:
            if not 0 <= index < len(grid) or series.values[index] is None:
                return False
            return not self._is_violation(sign, series.values[index], series.errors[index])

        if good_neighbor(first - 1):
            good_t, bad_index = grid[first - 1], first
        elif good_neighbor(last + 1):
            good_t, bad_index = grid[last + 1], last
        else:
            good_t, bad_index = None, first
        bad = (series.values[bad_index], series.errors[bad_index])
        return self._edge(d, kind, order, alpha, sign, good_t, grid[bad_index], bad)

    def _edge(
        self,
        d: MixtureDensity,
        kind: EntropyKind,
        order: int,
        alpha: float,
        sign: int,
        good_t: Optional[float],
        bad_t: float,
        bad: Tuple[float, float],
    ) -> ViolationBracket:
        """在未違反點與違反點之間二分,縮到 BRACKET_WIDTH;沒有未違反點時取寬度 BRACKET_WIDTH"""
        width = self.settings.BRACKET_WIDTH
        values: Dict[float, Tuple[float, float]] = {bad_t: bad}

        def evaluate(t: float) -> Optional[Tuple[float, float]]:
            if t not in values:
                try:
                    s = self.evaluator.engine_series(d, kind, order, EvalPoint(alpha, t))
                except (EntropyFlowError, ValueError, FloatingPointError):
                    return None
                values[t] = (s.value(order), s.error(order))
            return values[t]

        def is_bad(t: float) -> Optional[bool]:
            result = evaluate(t)
            return None if result is None else self._is_violation(sign, *result)

        if good_t is None:
            lo, hi = bad_t, bad_t + width
        else:
            good_t, bad_t = self._bisect(good_t, bad_t, width, is_bad)
            lo, hi = good_t, bad_t

        value, error = values[bad_t]
        spectral = self._spectral(d, kind, order, EvalPoint(alpha, bad_t))
        return ViolationBracket(min(lo, hi), max(lo, hi), value, error, spectral)

    @staticmethod
    def _bisect(
        good_t: float, bad_t: float, width: float, bad: Callable[[float], Optional[bool]]
    ) -> Tuple[float, float]:
        """回傳 (未違反端, 違反端);中點無法求值時停止"""
        while abs(bad_t - good_t) > width:
            mid = 0.5 * (good_t + bad_t)
            state = bad(mid)
            if state is None:
                break
            if state:
                bad_t = mid
            else:
                good_t = mid
        return good_t, bad_t
