"""傾斜動差與 ∫p^α 的數值積分服務"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import legendre
from scipy.integrate import quad, quad_vec

from ..config import Settings
from ..core.density import density_derivative, derivative_ratios, log_density
from ..errors import QuadratureNonConvergence
from ..models import EvalPoint, MixtureDensity, MomentSymbol, QuadratureConfig

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _gauss_legendre(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    return legendre.leggauss(nodes)


@dataclass(frozen=True)
class MomentTable:
    """同一 (α, t) 下一組動差的值與相對誤差估計"""

    symbols: Tuple[MomentSymbol, ...]
    values: np.ndarray
    rel_errors: np.ndarray

    def value(self, symbol: MomentSymbol) -> float:
        return float(self.values[self.symbols.index(symbol)])

    def rel_error(self, symbol: MomentSymbol) -> float:
        return float(self.rel_errors[self.symbols.index(symbol)])


class MomentIntegrator:
    """
    截斷區間上的自適應 Gauss–Kronrod 積分

    被積函數先乘上 exp(−M),M = max α·log p,使 p^α 不會溢位;
    動差以比值計算,縮放因子互相抵銷。
    """

    def __init__(self, settings: Optional[Settings] = None, config: Optional[QuadratureConfig] = None):
        self.settings = settings or Settings()
        self.config = config or QuadratureConfig.from_settings(self.settings)

    # ------------------------------------------------------------------
    # 共用工具
    # ------------------------------------------------------------------

    def domain(self, d: MixtureDensity, t: float) -> Tuple[float, float]:
        return d.domain(t, self.config.truncation_radius)

    def _breakpoints(self, d: MixtureDensity, t: float) -> Sequence[float]:
        lo, hi = self.domain(d, t)
        return sorted({c for c in d.centers if lo < c < hi})

    def _log_shift(self, d: MixtureDensity, alpha: float, t: float) -> float:
        """α·log p 的上界:在各中心取值的最大者"""
        return float(np.max(alpha * log_density(d, np.asarray(d.centers), t)))

    def _quad(self, func: Callable[[float], float], d: MixtureDensity, t: float, what: str) -> Tuple[float, float]:
        lo, hi = self.domain(d, t)
        out = quad(
            func,
            lo,
            hi,
            epsabs=self.config.abs_tol,
            epsrel=self.config.rel_tol,
            limit=self.config.max_subdivisions,
            points=self._breakpoints(d, t) or None,
            full_output=1,
        )
        if len(out) > 3:
            raise QuadratureNonConvergence(f"{what} 的積分未收斂: {out[3]}")
        return float(out[0]), float(out[1])

    def _vector_quad(self, func: Callable, d: MixtureDensity, t: float) -> Tuple[np.ndarray, float]:
        """
        quad_vec (max 範數);未收斂時以 QUAD_RETRY_FACTOR 放寬容許誤差重試一次

        重試仍未收斂但結果有限時照樣回傳,誤差估計由呼叫端計入相對誤差。

        Raises:
            QuadratureNonConvergence: 結果含 NaN 或 inf
        """
        lo, hi = self.domain(d, t)
        factor = 1.0
        for attempt in range(2):
            values, error, info = quad_vec(
                func,
                lo,
                hi,
                epsabs=self.config.abs_tol * factor,
                epsrel=self.config.rel_tol * factor,
                norm="max",
                limit=self.config.max_subdivisions,
                points=self._breakpoints(d, t) or None,
                full_output=True,
            )
            if info.success:
                return values, error
            logger.warning(f"quad_vec 未收斂 (第 {attempt + 1} 次, 誤差 {error:.3g}): {info.message}")
            factor = self.settings.QUAD_RETRY_FACTOR
        if not (np.all(np.isfinite(values)) and np.isfinite(error)):
            raise QuadratureNonConvergence(f"quad_vec 未收斂: {info.message}")
        return values, error

    def fixed_rule(self, lo: float, hi: float) -> Tuple[np.ndarray, np.ndarray]:
        """固定的複合 Gauss–Legendre 節點與權重"""
        base_x, base_w = _gauss_legendre(self.settings.SPECTRAL_NODES_PER_PANEL)
        edges = np.linspace(lo, hi, self.settings.SPECTRAL_PANELS + 1)
        half = np.diff(edges) / 2
        mid = (edges[:-1] + edges[1:]) / 2
        x = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
        w = (half[:, None] * base_w[None, :]).ravel()
        return x, w

    # ------------------------------------------------------------------
    # ∫p^α 與熵
    # ------------------------------------------------------------------

    def log_power_integral(self, d: MixtureDensity, alpha: float, t: float) -> Tuple[float, float]:
        """
        log ∫p^α dx 及其絕對誤差估計

        Raises:
            QuadratureNonConvergence: 積分未達容許誤差
        """
        shift = self._log_shift(d, alpha, t)
        value, error = self._quad(
            lambda x: math.exp(alpha * float(log_density(d, x, t)[0]) - shift), d, t, f"∫p^{alpha:g}"
        )
        return shift + math.log(value), error / value

    def alpha_stability(self, d: MixtureDensity, alpha: float, t: float) -> float:
        """S_t^α = ∫p^α dx"""
        log_value, _ = self.log_power_integral(d, alpha, t)
        return math.exp(log_value)

    def shannon(self, d: MixtureDensity, t: float) -> float:
        """−∫p log p dx"""

        def integrand(x: float) -> float:
            lp = float(log_density(d, x, t)[0])
            return -math.exp(lp) * lp

        value, _ = self._quad(integrand, d, t, "Shannon 熵")
        return value

    def integrate_squared_derivative(self, d: MixtureDensity, t: float, n: int) -> float:
        """∫(∂ⁿp/∂xⁿ)² dx"""
        value, _ = self._quad(lambda x: density_derivative(d, x, t, n) ** 2, d, t, f"∫p_{n}²")
        return value

    # ------------------------------------------------------------------
    # 傾斜動差
    # ------------------------------------------------------------------

    def moment_eval(self, d: MixtureDensity, m: MomentSymbol, at: EvalPoint) -> float:
        """
        E_α[∏ p̄ₙ^{kₙ}] = ∫p^α ∏(pₙ/p)^{kₙ} dx / ∫p^α dx

        Raises:
            QuadratureNonConvergence: 積分未達容許誤差
        """
        if m.is_unit:
            return 1.0
        alpha, t = at.alpha, at.t
        shift = self._log_shift(d, alpha, t)
        orders = np.array([n for n, _ in m.factors])
        exps = np.array([k for _, k in m.factors])
        top = int(orders.max())

        def weight(x: float) -> float:
            return math.exp(alpha * float(log_density(d, x, t)[0]) - shift)

        def integrand(x: float) -> float:
            ratios = derivative_ratios(d, x, t, top)[:, 0]
            return weight(x) * float(np.prod(ratios[orders] ** exps))

        numerator, _ = self._quad(integrand, d, t, str(m))
        denominator, _ = self._quad(weight, d, t, "∫p^α")
        return numerator / denominator

    def moment_table(self, d: MixtureDensity, symbols: Sequence[MomentSymbol], at: EvalPoint) -> MomentTable:
        """
        以 quad_vec 一次積分多個動差

        每個分量先以固定 Gauss–Legendre 規則估計大小並據此縮放,
        使向量範數的容許誤差對每個動差都是相對誤差。

        Raises:
            QuadratureNonConvergence: quad_vec 重試後結果仍非有限值
        """
        symbols = tuple(s for s in dict.fromkeys(symbols))
        alpha, t = at.alpha, at.t
        shift = self._log_shift(d, alpha, t)
        top = max((s.max_order for s in symbols), default=0)
        exponents = np.zeros((len(symbols) + 1, top + 1))
        for row, s in enumerate(symbols, start=1):
            for n, k in s.factors:
                exponents[row, n] = k

        def integrand(x) -> np.ndarray:
            x = np.atleast_1d(x)
            ratios = derivative_ratios(d, x, t, top)
            weight = np.exp(alpha * log_density(d, x, t) - shift)
            # (符號, 點)
            products = np.prod(ratios.T[None, :, :] ** exponents[:, None, :], axis=2)
            return products * weight[None, :]

        lo, hi = self.domain(d, t)
        x, w = self.fixed_rule(lo, hi)
        estimate = sum(integrand(x[k : k + 64]) @ w[k : k + 64] for k in range(0, len(x), 64))
        scale = np.where(np.abs(estimate) > 1e-300, np.abs(estimate), 1.0)

        values, error = self._vector_quad(lambda y: integrand(y)[:, 0] / scale, d, t)
        raw = values * scale
        normalizer = raw[0]
        moments = raw[1:] / normalizer
        abs_err = error * scale
        rel = abs_err[1:] / np.maximum(np.abs(raw[1:]), 1e-300) + abs_err[0] / abs(normalizer)
        logger.debug(f"動差表: {len(symbols)} 個符號, α={alpha:g}, t={t:g}")
        return MomentTable(symbols, moments, rel)
