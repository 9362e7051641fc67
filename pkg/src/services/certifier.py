"""平方和證書服務:取樣求解、曲線擬合、精確區間驗證"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..config import Settings
from ..core import (
    HeatCalculus,
    assemble_matrix,
    build_gram_problem,
    choose_free_parameters,
    default_gram_basis,
    fit_parameter_table,
    isolate_roots,
    known_certificate,
    principal_minors,
    slack_polynomials,
    sturm_root_count,
)
from ..errors import InfeasibleSample
from ..models import (
    AlphaPoly,
    EntropyKind,
    FeasiblePoint,
    FittedParams,
    GramProblem,
    Infeasible,
    PolyMatrix,
    PolynomialEvidence,
    PositivityCertificate,
    SlackTerm,
    Verdict,
)
from .sdp_solver import SdpSolver, SolveResult

logger = logging.getLogger(__name__)

Interval = Tuple[Fraction, Fraction]


def _fraction(value) -> Fraction:
    return Fraction(str(value)) if isinstance(value, float) else Fraction(value)


@dataclass(frozen=True)
class CertificationRun:
    """一次完整流程的產物"""

    problem: GramProblem
    params: FittedParams
    matrix: PolyMatrix
    slacks: Tuple[AlphaPoly, ...]
    certificate: PositivityCertificate


class CertifierService:
    """由 SDP 取樣到精確證書的流程"""

    def __init__(self, settings: Optional[Settings] = None, solver: Optional[SdpSolver] = None):
        self.settings = settings or Settings()
        self.solver = solver or SdpSolver(self.settings)
        self.calculus = HeatCalculus(self.settings)

    # ------------------------------------------------------------------
    # 問題建構
    # ------------------------------------------------------------------

    def problem_for(
        self, kind: EntropyKind, order: int, slack_terms: Optional[Tuple[SlackTerm, ...]] = None
    ) -> GramProblem:
        """第 order 階導數的預設 Gram 問題"""
        kind = EntropyKind.parse(kind)
        target = self.calculus.derive(kind, order)
        problem = build_gram_problem(target, default_gram_basis(order, kind), slack_terms)
        logger.info(
            f"Gram 問題: {problem.size}×{problem.size}, {len(problem.unknowns)} 個未知數, "
            f"{len(problem.constraints)} 條方程"
        )
        return problem

    # ------------------------------------------------------------------
    # 數值取樣與擬合
    # ------------------------------------------------------------------

    def solve_grid(self, problem: GramProblem, alpha_grid: Sequence[float]) -> List[SolveResult]:
        """各 α 的 SDP 以執行緒池平行求解,結果依 α 遞增排列"""
        grid = sorted(float(a) for a in alpha_grid)
        workers = max(1, min(self.settings.JOBS, len(grid)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda a: self.solver.solve_feasibility(problem, a), grid))
        return sorted(results, key=lambda r: r.alpha)

    def sample_and_fit(
        self,
        problem: GramProblem,
        alpha_grid: Sequence[float],
        fit_degree: int,
        round_denominator: int,
        free: Optional[Sequence[str]] = None,
        known_points: Optional[Dict[str, Sequence[Tuple[float, float]]]] = None,
        exact_known: bool = False,
    ) -> FittedParams:
        """
        取樣求解後逐一擬合自由參數

        Args:
            problem: Gram 問題
            alpha_grid: 取樣的 α
            fit_degree: 擬合次數
            round_denominator: 有理化分母
            free: 自由參數名稱;None 時以決定性主元規則選取
            known_points: 參數在某些 α 的已知值 (例如 {"g1,3": [(2.0, 0.0)]}),與取樣值一起擬合
            exact_known: True 時已知值改為擬合曲線必須精確通過的限制

        Raises:
            InfeasibleSample: 任一取樣點不可行
            ValueError: 取樣點數不足
        """
        if len(alpha_grid) < fit_degree + 1:
            raise ValueError(f"{fit_degree} 次擬合至少需要 {fit_degree + 1} 個取樣點")
        names = list(free) if free is not None else choose_free_parameters(problem)[0]
        known = dict(known_points or {})
        unknown = sorted(set(known) - set(names))
        if unknown:
            raise ValueError(f"已知值指定了非自由參數: {', '.join(unknown)}")
        results = self.solve_grid(problem, alpha_grid)
        for result in results:
            if isinstance(result, Infeasible):
                raise InfeasibleSample(
                    f"α={result.alpha:g} 不可行 (違反量 {result.violation:.3e}): {result.reason}", result
                )
        points: List[FeasiblePoint] = results  # type: ignore[assignment]

        table = {name: [(p.alpha, p.values()[name]) for p in points] for name in names}
        logger.info(f"擬合 {len(names)} 個自由參數 (次數 {fit_degree}, 分母 {round_denominator})")
        return fit_parameter_table(table, fit_degree, round_denominator, known, exact_known)

    # ------------------------------------------------------------------
    # 精確驗證
    # ------------------------------------------------------------------

    def certify_interval(
        self,
        m: PolyMatrix,
        slacks: Sequence[AlphaPoly],
        interval: Tuple,
        closed: bool = False,
    ) -> PositivityCertificate:
        """
        矩陣在 α 區間上正定的精確證書

        恆為零的列先移除;其餘矩陣的每個順序主子式與每個鬆弛多項式都必須在
        開區間內無根且中點為正。端點為根時端點向內移動 ENDPOINT_PERTURBATION。
        closed=True 時另外在原端點精確檢查半正定性。

        Returns:
            PositivityCertificate;失敗時 certified_interval 為找到的最寬可證子區間
        """
        lo, hi = (_fraction(v) for v in interval)
        if lo >= hi:
            raise ValueError(f"區間左端點必須小於右端點: ({lo}, {hi})")

        zero_rows = tuple(m.zero_rows())
        kept = [i for i in range(m.size) if i not in zero_rows]
        minors = principal_minors(m.submatrix(kept)) if kept else []
        slack_polys = list(slacks)

        work, perturbations = self._perturb((lo, hi), [p for p in minors + slack_polys if not p.is_zero])
        minor_evidence = tuple(self._evidence(p, work, allow_zero=False) for p in minors)
        slack_evidence = tuple(self._evidence(p, work, allow_zero=True) for p in slack_polys)
        all_ok = all(e.certified for e in minor_evidence + slack_evidence)

        if not all_ok:
            widest = self._widest_subinterval(minors + slack_polys, work)
            logger.info(f"✗ ({float(lo):g}, {float(hi):g}) 驗證失敗,最寬可證子區間 {widest}")
            return PositivityCertificate(
                (lo, hi), minor_evidence, slack_evidence, Verdict.FAILED, widest, perturbations, zero_rows
            )

        verdict = Verdict.POSITIVE_DEFINITE
        if closed:
            for endpoint in (lo, hi):
                state = self._endpoint_state(m, slack_polys, endpoint)
                if state is None:
                    logger.info(f"✗ 端點 α={endpoint} 不是半正定")
                    return PositivityCertificate(
                        (lo, hi), minor_evidence, slack_evidence, Verdict.FAILED, work, perturbations, zero_rows
                    )
                if state == Verdict.PSD_AT_ENDPOINT:
                    verdict = Verdict.PSD_AT_ENDPOINT

        logger.info(f"✓ ({float(lo):g}, {float(hi):g}): {verdict.value}")
        return PositivityCertificate(
            (lo, hi), minor_evidence, slack_evidence, verdict, work, perturbations, zero_rows
        )

    def _perturb(
        self, interval: Interval, polys: Sequence[AlphaPoly]
    ) -> Tuple[Interval, Tuple[Tuple[Fraction, Fraction], ...]]:
        """端點為某多項式的根時向內移動,直到沒有多項式在端點為零"""
        step = Fraction(self.settings.ENDPOINT_PERTURBATION)
        lo, hi = interval
        new_lo, new_hi = lo, hi
        while any(p.evaluate(new_lo) == 0 for p in polys):
            new_lo += step
        while any(p.evaluate(new_hi) == 0 for p in polys):
            new_hi -= step
        if new_lo >= new_hi:
            raise ValueError(f"區間 ({lo}, {hi}) 過窄,無法避開端點根")
        perturbations = tuple((old, new) for old, new in ((lo, new_lo), (hi, new_hi)) if old != new)
        for old, new in perturbations:
            logger.debug(f"端點 {old} 移至 {new}")
        return (new_lo, new_hi), perturbations

    @staticmethod
    def _evidence(p: AlphaPoly, interval: Interval, allow_zero: bool) -> PolynomialEvidence:
        if p.is_zero:
            return PolynomialEvidence(p, interval, 0, 0, identically_zero=allow_zero)
        mid = (interval[0] + interval[1]) / 2
        return PolynomialEvidence(p, interval, sturm_root_count(p, interval), p.sign_at(mid))

    def _widest_subinterval(self, polys: Sequence[AlphaPoly], interval: Interval) -> Optional[Interval]:
        """以所有實根的隔離區間切割,回傳所有多項式皆為正的最寬一段"""
        nonzero = [p for p in polys if not p.is_zero]
        width = Fraction(self.settings.ROOT_ISOLATION_WIDTH)
        cuts: List[Interval] = []
        for p in nonzero:
            cuts.extend(isolate_roots(p, interval, width))
        cuts.sort()

        edges = [interval[0]]
        for a, b in cuts:
            edges += [a, b]
        edges.append(interval[1])

        best: Optional[Interval] = None
        for a, b in zip(edges[::2], edges[1::2]):
            if a >= b or (best is not None and b - a <= best[1] - best[0]):
                continue
            if self._all_positive(nonzero, (a, b)):
                best = (a, b)
        return best

    @staticmethod
    def _deflate(p: AlphaPoly, *points: Fraction) -> AlphaPoly:
        """除去 p 在給定點的根;開區間內的根不受影響"""
        for x in points:
            while p.evaluate(x) == 0:
                p = p.exact_div(AlphaPoly.linear(x))
        return p

    def _all_positive(self, polys: Sequence[AlphaPoly], interval: Interval) -> bool:
        mid = (interval[0] + interval[1]) / 2
        for p in polys:
            if p.sign_at(mid) <= 0:
                return False
            if sturm_root_count(self._deflate(p, *interval), interval) != 0:
                return False
        return True

    @staticmethod
    def _endpoint_state(m: PolyMatrix, slacks: Sequence[AlphaPoly], alpha: Fraction) -> Optional[Verdict]:
        """
        原端點的精確判定

        Returns:
            POSITIVE_DEFINITE、PSD_AT_ENDPOINT (零列以外的區塊正定),或 None
        """
        if any(p.evaluate(alpha) < 0 for p in slacks):
            return None
        values = m.evaluate(alpha)
        n = m.size
        nonzero = [i for i in range(n) if any(v != 0 for v in values[i])]
        block = PolyMatrix.from_rows([[values[i][j] for j in nonzero] for i in nonzero]) if nonzero else None
        if block is not None and any(p.constant_term <= 0 for p in principal_minors(block)):
            return None
        return Verdict.POSITIVE_DEFINITE if len(nonzero) == n else Verdict.PSD_AT_ENDPOINT

    # ------------------------------------------------------------------
    # 完整流程
    # ------------------------------------------------------------------

    def certify_fitted(
        self,
        problem: GramProblem,
        params: FittedParams,
        interval: Tuple,
        closed: bool = False,
    ) -> CertificationRun:
        """組裝擬合矩陣並驗證"""
        matrix = assemble_matrix(params, problem)
        slacks = tuple(slack_polynomials(params, problem))
        certificate = self.certify_interval(matrix, slacks, interval, closed)
        return CertificationRun(problem, params, matrix, slacks, certificate)

    def certify_known(self, name: str, closed: bool = False) -> CertificationRun:
        """重播內建的已知參數族,不需要 SDP"""
        known = known_certificate(name)
        logger.info(f"重播已知參數族 {known.name}: {known.description}")
        problem = self.problem_for(known.kind, known.order)
        return self.certify_fitted(problem, known.fitted(), known.interval, closed)

    def run(
        self,
        kind: Union[str, EntropyKind],
        order: int,
        alpha_grid: Sequence[float],
        fit_degree: int,
        round_denominator: int,
        interval: Tuple,
        slack_terms: Optional[Tuple[SlackTerm, ...]] = None,
        closed: bool = False,
        known_points: Optional[Dict[str, Sequence[Tuple[float, float]]]] = None,
        exact_known: bool = False,
    ) -> CertificationRun:
        """取樣、擬合、組裝、驗證"""
        problem = self.problem_for(EntropyKind.parse(kind), order, slack_terms)
        params = self.sample_and_fit(
            problem, alpha_grid, fit_degree, round_denominator, known_points=known_points, exact_known=exact_known
        )
        return self.certify_fitted(problem, params, interval, closed)
