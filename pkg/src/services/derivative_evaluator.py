"""熵與其 t 導數的數值求值:符號引擎路線與 Chebyshev 譜路線"""

import logging
import math
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.special import logsumexp

from ..config import Settings
from ..core import HeatCalculus, renyi_from_tsallis
from ..core.density import log_density
from ..errors import SpectralIllConditioned
from ..models import EntropyKind, EvalPoint, MixtureDensity, MomentExpr
from .quadrature import MomentIntegrator, MomentTable

logger = logging.getLogger(__name__)

ENGINE = "engine"
SPECTRAL = "spectral"


@dataclass(frozen=True)
class DerivativeSeries:
    """同一 (α, t) 下第 1..K 階導數的值與絕對誤差估計"""

    kind: EntropyKind
    alpha: float
    t: float
    values: Tuple[float, ...]
    errors: Tuple[float, ...]

    def value(self, order: int) -> float:
        return self.values[order - 1]

    def error(self, order: int) -> float:
        return self.errors[order - 1]


class DerivativeEvaluator:
    """高斯混合在熱流下的熵導數"""

    def __init__(self, settings: Optional[Settings] = None, integrator: Optional[MomentIntegrator] = None):
        self.settings = settings or Settings()
        self.integrator = integrator or MomentIntegrator(self.settings)
        self.calculus = HeatCalculus(self.settings)
        self._families: Dict[int, Tuple[MomentExpr, ...]] = {}

    def _effective_alpha(self, kind: EntropyKind, at: EvalPoint) -> Tuple[EntropyKind, float]:
        """|α − 1| 小於門檻時改走 Shannon"""
        if kind == EntropyKind.SHANNON or at.is_shannon(self.settings.SHANNON_THRESHOLD):
            return EntropyKind.SHANNON, 1.0
        return kind, at.alpha

    # ------------------------------------------------------------------
    # 熵
    # ------------------------------------------------------------------

    def entropy_eval(self, d: MixtureDensity, kind: EntropyKind, at: EvalPoint) -> float:
        """
        Rényi (1/(1−α))·log∫p^α、Tsallis (∫p^α − 1)/(1−α) 或 Shannon −∫p log p

        Raises:
            QuadratureNonConvergence: 積分未達容許誤差
        """
        kind, alpha = self._effective_alpha(EntropyKind.parse(kind), at)
        if kind == EntropyKind.SHANNON:
            return self.integrator.shannon(d, at.t)
        log_integral, _ = self.integrator.log_power_integral(d, alpha, at.t)
        if kind == EntropyKind.RENYI:
            return log_integral / (1 - alpha)
        return math.expm1(log_integral) / (1 - alpha)

    # ------------------------------------------------------------------
    # 引擎路線
    # ------------------------------------------------------------------

    def _tsallis_family(self, order: int) -> Tuple[MomentExpr, ...]:
        if order not in self._families:
            self._families[order] = tuple(self.calculus.tsallis_family(order))
        return self._families[order]

    @staticmethod
    def _evaluate(expr: MomentExpr, alpha: float, table: MomentTable) -> Tuple[float, float]:
        value = 0.0
        error = 0.0
        for term in expr:
            coeff = term.coefficient.evaluate_float(alpha)
            if not term.symbols:
                value += coeff
                continue
            symbol = term.symbols[0]
            contribution = coeff * table.value(symbol)
            value += contribution
            error += abs(contribution) * table.rel_error(symbol)
        return value, error

    def engine_series(self, d: MixtureDensity, kind: EntropyKind, max_order: int, at: EvalPoint) -> DerivativeSeries:
        """
        以 Tsallis 族 Q₁..Q_K 的數值動差表求出 1..K 階導數

        Rényi 由 h_k = Q_k − (1−α)·Σ C(k−1, j−1)·h_j·Q_{k−j} 組成;Tsallis 乘上 Z = ∫p^α。

        Raises:
            QuadratureNonConvergence: 動差積分未收斂
        """
        if max_order < 1:
            raise ValueError(f"導數階數必須 ≥ 1: {max_order}")
        kind, alpha = self._effective_alpha(EntropyKind.parse(kind), at)
        family = self._tsallis_family(max_order)
        symbols = [s for expr in family for s in expr.symbols()]
        table = self.integrator.moment_table(d, symbols, EvalPoint(alpha, at.t))
        evaluated = [self._evaluate(expr, alpha, table) for expr in family]
        q_values = [v for v, _ in evaluated]
        q_errors = [e for _, e in evaluated]

        if kind == EntropyKind.TSALLIS:
            log_z, rel_z = self.integrator.log_power_integral(d, alpha, at.t)
            z = math.exp(log_z)
            values = [z * q for q in q_values]
            errors = [z * e + abs(z * q) * rel_z for q, e in zip(q_values, q_errors)]
        else:
            values = renyi_from_tsallis(q_values, 1 - alpha)
            errors = self._renyi_errors(values, q_values, q_errors, 1 - alpha)
        return DerivativeSeries(kind, alpha, at.t, tuple(values), tuple(errors))

    @staticmethod
    def _renyi_errors(h: List[float], q: List[float], q_err: List[float], one_minus_alpha: float) -> List[float]:
        errors: List[float] = []
        for k in range(1, len(q) + 1):
            err = q_err[k - 1]
            for j in range(1, k):
                weight = abs(one_minus_alpha) * comb(k - 1, j - 1)
                err += weight * (abs(h[j - 1]) * q_err[k - j - 1] + errors[j - 1] * abs(q[k - j - 1]))
            errors.append(err)
        return errors

    # ------------------------------------------------------------------
    # 譜路線
    # ------------------------------------------------------------------

    def spectral(self, d: MixtureDensity, kind: EntropyKind, order: int, at: EvalPoint) -> float:
        """
        [t/2, 2t] 上熵的 Chebyshev 插值微分 order 次

        熵以固定的複合 Gauss–Legendre 規則在整個視窗共用的截斷區間上計算,
        使插值的函數對 t 平滑。

        Raises:
            SpectralIllConditioned: order 超過 SPECTRAL_MAX_ORDER
        """
        s = self.settings
        if order > s.SPECTRAL_MAX_ORDER:
            raise SpectralIllConditioned(f"譜微分只支援到 {s.SPECTRAL_MAX_ORDER} 階,要求 {order} 階")
        kind, alpha = self._effective_alpha(EntropyKind.parse(kind), at)
        lo_t, hi_t = s.CHEB_WINDOW[0] * at.t, s.CHEB_WINDOW[1] * at.t
        x, w = self.integrator.fixed_rule(*self.integrator.domain(d, hi_t))
        log_w = np.log(w)

        def entropy(ts: np.ndarray) -> np.ndarray:
            out = np.empty(len(ts))
            for i, tau in enumerate(ts):
                if kind == EntropyKind.SHANNON:
                    lp = log_density(d, x, tau)
                    out[i] = -np.sum(w * np.exp(lp) * lp)
                    continue
                log_integral = logsumexp(alpha * log_density(d, x, tau) + log_w)
                if kind == EntropyKind.RENYI:
                    out[i] = log_integral / (1 - alpha)
                else:
                    # 省略常數項 −1/(1−α),k ≥ 1 階導數不受影響
                    out[i] = math.exp(log_integral) / (1 - alpha)
            return out

        series = Chebyshev.interpolate(entropy, s.CHEB_DEGREE, domain=[lo_t, hi_t])
        coef = series.coef
        keep = np.flatnonzero(np.abs(coef) > s.CHEB_CHOP_TOL * np.max(np.abs(coef)))
        if keep.size:
            series = Chebyshev(coef[: keep[-1] + 1], domain=[lo_t, hi_t])
        return float(series.deriv(order)(at.t))

    # ------------------------------------------------------------------
    # 對外介面
    # ------------------------------------------------------------------

    def derivative_eval(
        self, d: MixtureDensity, kind: EntropyKind, order: int, at: EvalPoint, route: str = ENGINE
    ) -> float:
        """
        第 order 階 t 導數

        Args:
            route: "engine" (符號公式 × 數值動差) 或 "spectral"

        Raises:
            ValueError: order < 1 或路線不存在
            QuadratureNonConvergence: 積分未收斂
            SpectralIllConditioned: 譜路線階數過高
        """
        if order < 1:
            raise ValueError(f"導數階數必須 ≥ 1: {order}")
        if route == ENGINE:
            return self.engine_series(d, kind, order, at).value(order)
        if route == SPECTRAL:
            return self.spectral(d, kind, order, at)
        raise ValueError(f"未知的求值路線: {route}")

    def concavity_eval(self, d: MixtureDensity, alpha: float, t: float, beta: float) -> float:
        """h'' + 2β(h')²;≤ 0 表示 N_α^β 在 t 凹"""
        series = self.engine_series(d, EntropyKind.RENYI, 2, EvalPoint(alpha, t))
        return series.value(2) + 2 * beta * series.value(1) ** 2

    def tsallis2_identity_check(self, d: MixtureDensity, order: int, t: float) -> Tuple[float, float]:
        """
        α = 2 時 Tsallis 導數與 (−1)^{k−1}∫p_k² 兩邊的值

        Returns:
            (lhs, rhs)
        """
        if order < 1:
            raise ValueError(f"導數階數必須 ≥ 1: {order}")
        lhs = self.derivative_eval(d, EntropyKind.TSALLIS, order, EvalPoint(2.0, t))
        rhs = (-1) ** (order - 1) * self.integrator.integrate_squared_derivative(d, t, order)
        logger.info(f"Tsallis α=2 k={order} t={t:g}: {lhs:.12g} vs {rhs:.12g}")
        return lhs, rhs

    def alpha_stability(self, d: MixtureDensity, alpha: float, t: float) -> float:
        """S_t^α = ∫p^α"""
        return self.integrator.alpha_stability(d, alpha, t)

    def entropy_power(self, d: MixtureDensity, alpha: float, t: float, beta: float = 1.0) -> float:
        """N_α^β = exp(2β·h_α)"""
        return math.exp(2 * beta * self.entropy_eval(d, EntropyKind.RENYI, EvalPoint(alpha, t)))
