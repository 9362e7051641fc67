"""高斯混合密度與數值設定"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple


@dataclass(frozen=True)
class MixtureDensity:
    """
    熱流下的高斯混合

    第 j 個分量在時間 t 的變異數為 initial_variances[j] + t;
    δ 測度以初始變異數 0 表示。
    """

    weights: Tuple[float, ...]
    centers: Tuple[float, ...]
    initial_variances: Tuple[float, ...]

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        centers = tuple(float(c) for c in self.centers)
        variances = tuple(float(v) for v in self.initial_variances)
        if not weights:
            raise ValueError("混合至少需要一個分量")
        if not (len(weights) == len(centers) == len(variances)):
            raise ValueError("weights / centers / initial_variances 長度必須相同")
        if any(w <= 0 for w in weights):
            raise ValueError("權重必須為正")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError(f"權重總和必須為 1,收到 {sum(weights)!r}")
        if any(v < 0 for v in variances):
            raise ValueError("初始變異數不可為負")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "initial_variances", variances)

    @classmethod
    def gaussian(cls, center: float = 0.0, variance: float = 0.0) -> "MixtureDensity":
        return cls((1.0,), (center,), (variance,))

    @classmethod
    def two_point(cls) -> "MixtureDensity":
        """½(δ₁ + δ₋₁)"""
        return cls((0.5, 0.5), (1.0, -1.0), (0.0, 0.0))

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def mean(self) -> float:
        return sum(w * c for w, c in zip(self.weights, self.centers))

    @property
    def variance(self) -> float:
        """初始分布 X 的變異數 σ²"""
        m = self.mean
        return sum(
            w * (v + (c - m) ** 2)
            for w, c, v in zip(self.weights, self.centers, self.initial_variances)
        )

    def variances_at(self, t: float) -> Tuple[float, ...]:
        return tuple(v + t for v in self.initial_variances)

    def domain(self, t: float, radius: float) -> Tuple[float, float]:
        """截斷區間 [最小中心 − R·σ_max, 最大中心 + R·σ_max]"""
        sigma = math.sqrt(max(self.variances_at(t)))
        return min(self.centers) - radius * sigma, max(self.centers) + radius * sigma

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights),
            "centers": list(self.centers),
            "initial_variances": list(self.initial_variances),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MixtureDensity":
        try:
            return cls(
                tuple(data["weights"]),
                tuple(data["centers"]),
                tuple(data["initial_variances"]),
            )
        except KeyError as e:
            raise ValueError(f"混合密度 JSON 缺少欄位: {e}") from e


@dataclass(frozen=True)
class QuadratureConfig:
    """數值積分設定"""

    truncation_radius: float = 12.0
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 400

    def __post_init__(self):
        if self.truncation_radius < 8:
            raise ValueError("截斷半徑 R 必須 ≥ 8")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("容許誤差必須為正")

    @classmethod
    def from_settings(cls, settings) -> "QuadratureConfig":
        return cls(
            truncation_radius=settings.TRUNCATION_RADIUS,
            abs_tol=settings.QUAD_ABS_TOL,
            rel_tol=settings.QUAD_REL_TOL,
            max_subdivisions=settings.QUAD_MAX_SUBDIVISIONS,
        )


@dataclass(frozen=True)
class EvalPoint:
    """求值點 (α, t)"""

    alpha: float
    t: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"α 必須為正: {self.alpha}")
        if self.t <= 0:
            raise ValueError(f"t 必須為正: {self.t}")

    def is_shannon(self, threshold: float = 1e-9) -> bool:
        return abs(self.alpha - 1.0) < threshold


def parse_grid(values: Sequence[float]) -> Tuple[float, ...]:
    """排序並檢查 t 格點皆為正"""
    grid = tuple(sorted(float(v) for v in values))
    if not grid or grid[0] <= 0:
        raise ValueError("t 格點必須為正且非空")
    return grid
