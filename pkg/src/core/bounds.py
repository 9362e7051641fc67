"""熱流下 Rényi 熵的上下界"""

import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import gammaln


@dataclass(frozen=True)
class EntropyBounds:
    """
    lower ≤ h_α(X + √t Z) ≤ upper

    gaussian_reference 為變異數 t + σ² 的高斯之 Rényi 熵,只在 α ≥ 1 給出,
    對 α > 1 並不是上界。
    """

    alpha: float
    t: float
    sigma2: float
    lower: float
    upper: Optional[float]
    gaussian_reference: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "t": self.t,
            "sigma2": self.sigma2,
            "lower": self.lower,
            "upper": self.upper,
            "gaussian_reference": self.gaussian_reference,
        }


def gaussian_renyi(alpha: float, variance: float) -> float:
    """N(0, v) 的 Rényi 熵;α = 1 時為 Shannon 熵"""
    if abs(alpha - 1.0) < 1e-12:
        return 0.5 * math.log(2 * math.pi * math.e * variance)
    return 0.5 * math.log(2 * math.pi * variance) + math.log(alpha) / (2 * (alpha - 1))


def _pearson_upper(alpha: float, variance: float) -> float:
    """1/3 < α < 1:同變異數的 Pearson VII 型分布達到最大 Rényi 熵"""
    return (
        math.log(2 * alpha / (3 * alpha - 1)) / (1 - alpha)
        + float(gammaln((1 + alpha) / (2 * (1 - alpha))))
        - float(gammaln(1 / (1 - alpha)))
        + 0.5 * math.log(math.pi * (3 * alpha - 1) * variance / (1 - alpha))
    )


def entropy_bounds(alpha: float, t: float, sigma2: float) -> EntropyBounds:
    """
    X 的變異數為 sigma2 時 h_α(X + √t Z) 的上下界

    下界由 √t Z 的熵 (熱流下熵遞增) 得到。α ≥ 1 的上界為同變異數高斯的
    Shannon 熵 (h_α ≤ h_1 ≤ ½log(2πe(t+σ²)));1/3 < α < 1 用 Pearson VII 界;
    其餘沒有上界。

    Raises:
        ValueError: α ≤ 0、t ≤ 0 或 sigma2 < 0
    """
    if alpha <= 0 or t <= 0 or sigma2 < 0:
        raise ValueError(f"需要 α > 0、t > 0、σ² ≥ 0: α={alpha}, t={t}, σ²={sigma2}")
    variance = t + sigma2
    lower = gaussian_renyi(alpha, t)
    if alpha >= 1:
        upper = gaussian_renyi(1.0, variance)
        reference = gaussian_renyi(alpha, variance)
        return EntropyBounds(alpha, t, sigma2, lower, upper, reference)
    if alpha > 1 / 3:
        return EntropyBounds(alpha, t, sigma2, lower, _pearson_upper(alpha, variance))
    return EntropyBounds(alpha, t, sigma2, lower, None)
