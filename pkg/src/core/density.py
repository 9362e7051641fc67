"""
熱流下高斯混合的密度與空間導數

第 j 個分量在時間 t 為 N(cⱼ, vⱼ),vⱼ = sⱼ + t;
∂ⁿφ_v(x − c)/∂xⁿ = (−1)ⁿ v^{−n/2} Heₙ(z) φ_v(x − c),z = (x − c)/√v,
Heₙ 為機率學家的 Hermite 多項式。
"""

import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial import hermite_e as He
from scipy.special import logsumexp

from ..models import MixtureDensity

LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


@lru_cache(maxsize=None)
def _hermite_basis(n: int) -> np.ndarray:
    """Heₙ 的係數向量"""
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return coeffs


def _standardized(d: MixtureDensity, x: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """(z, log(wⱼφ_vⱼ)),形狀為 (分量, 點)"""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    centers = np.asarray(d.centers)[:, None]
    variances = np.asarray(d.variances_at(t))[:, None]
    z = (x[None, :] - centers) / np.sqrt(variances)
    log_terms = np.log(np.asarray(d.weights))[:, None] - 0.5 * z * z - 0.5 * np.log(variances) - LOG_SQRT_2PI
    return z, log_terms


def log_density(d: MixtureDensity, x, t: float) -> np.ndarray:
    """log p(x, t),以 logsumexp 避免下溢"""
    _, log_terms = _standardized(d, x, t)
    return logsumexp(log_terms, axis=0)


def density(d: MixtureDensity, x, t: float) -> np.ndarray:
    return np.exp(log_density(d, x, t))


def density_derivative(d: MixtureDensity, x, t: float, n: int):
    """
    ∂ⁿp/∂xⁿ 的解析值

    Args:
        d: 混合密度
        x: 位置 (純量或陣列)
        t: 時間,> 0
        n: 導數階數,≥ 0

    Raises:
        ValueError: t ≤ 0 或 n < 0
    """
    if t <= 0:
        raise ValueError(f"t 必須為正: {t}")
    if n < 0:
        raise ValueError(f"導數階數必須 ≥ 0: {n}")
    z, log_terms = _standardized(d, x, t)
    variances = np.asarray(d.variances_at(t))[:, None]
    factor = (-1) ** n * variances ** (-n / 2) * He.hermeval(z, _hermite_basis(n))
    value = np.sum(factor * np.exp(log_terms), axis=0)
    return float(value[0]) if np.ndim(x) == 0 else value


def derivative_ratios(d: MixtureDensity, x, t: float, max_order: int) -> np.ndarray:
    """
    p̄ₙ = pₙ/p,n = 0..max_order,形狀 (max_order + 1, 點)

    以分量的後驗權重 wⱼφⱼ/p 加權,不需要先算出 p 本身,尾端也不會溢位。
    """
    z, log_terms = _standardized(d, x, t)
    posterior = np.exp(log_terms - logsumexp(log_terms, axis=0)[None, :])
    scale = 1.0 / np.sqrt(np.asarray(d.variances_at(t)))[:, None]
    ratios = np.empty((max_order + 1, z.shape[1]))
    # Heₙ₊₁(z) = z·Heₙ(z) − n·Heₙ₋₁(z)
    prev = np.zeros_like(z)
    current = np.ones_like(z)
    for n in range(max_order + 1):
        ratios[n] = np.sum(posterior * (-scale) ** n * current, axis=0)
        prev, current = current, z * current - n * prev
    return ratios
