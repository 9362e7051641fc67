"""Gram 矩陣 (平方和) 匹配問題的資料模型"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .alpha_poly import AlphaPoly
from .moment import FactorInput, Factors, MomentExpr, MomentSymbol, freeze_factors, total_order


def entry_name(i: int, j: int) -> str:
    """Gram 元素名稱,1-based,i ≤ j,例如 g1,2"""
    if i > j:
        i, j = j, i
    return f"g{i + 1},{j + 1}"


@dataclass(frozen=True)
class GramBasisElement:
    """基底向量的一個分量:逐點 p̄ 單項式 × 動差純量"""

    pointwise: Factors = ()
    scalar_moments: Tuple[MomentSymbol, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pointwise", freeze_factors(self.pointwise))
        scalars = tuple(sorted((s for s in self.scalar_moments if not s.is_unit), key=MomentSymbol.sort_key))
        object.__setattr__(self, "scalar_moments", scalars)

    @classmethod
    def of(cls, pointwise: FactorInput = (), *scalars: MomentSymbol) -> "GramBasisElement":
        return cls(freeze_factors(pointwise), tuple(scalars))

    @property
    def total_order(self) -> int:
        return total_order(self.pointwise) + sum(s.total_order for s in self.scalar_moments)

    def __str__(self) -> str:
        parts = [
            f"p̄{order}" if exp == 1 else f"p̄{order}^{exp}" for order, exp in self.pointwise
        ]
        parts += [str(s) for s in self.scalar_moments]
        return "·".join(parts) if parts else "1"


@dataclass(frozen=True)
class SlackTerm:
    """非負鬆弛項:係數 ≥ 0 乘上 sign·expr"""

    name: str
    expr: MomentExpr
    sign: int = 1


@dataclass(frozen=True)
class AffineConstraint:
    """某一個標準動差乘積的係數匹配方程 Σ coeff·unknown = rhs"""

    monomial: Tuple[MomentSymbol, ...]
    coefficients: Tuple[Tuple[str, AlphaPoly], ...]
    rhs: AlphaPoly

    @property
    def unknowns(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.coefficients)

    def coefficient(self, name: str) -> AlphaPoly:
        for unknown, poly in self.coefficients:
            if unknown == name:
                return poly
        return AlphaPoly.zero()

    def residual(self, values: Dict[str, AlphaPoly]) -> AlphaPoly:
        """代入後 左邊 − 右邊"""
        total = AlphaPoly.zero()
        for name, poly in self.coefficients:
            total = total + poly * values[name]
        return total - self.rhs

    def label(self) -> str:
        if not self.monomial:
            return "1"
        return "·".join(str(s) for s in self.monomial)


@dataclass(frozen=True)
class GramProblem:
    """
    E_α[zᵀAz] + Σ cⱼ·slackⱼ = target 的係數匹配問題

    未知數依序為上三角 Gram 元素 (列優先) 以及各鬆弛係數。
    """

    basis: Tuple[GramBasisElement, ...]
    target: MomentExpr
    slack_terms: Tuple[SlackTerm, ...]
    constraints: Tuple[AffineConstraint, ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def gram_names(self) -> List[str]:
        n = self.size
        return [entry_name(i, j) for i in range(n) for j in range(i, n)]

    @property
    def slack_names(self) -> List[str]:
        return [s.name for s in self.slack_terms]

    @property
    def unknowns(self) -> List[str]:
        return self.gram_names + self.slack_names

    def entry_index(self, name: str) -> Tuple[int, int]:
        """由 "gi,j" 取得 0-based (i, j)"""
        body = name[1:].split(",")
        return int(body[0]) - 1, int(body[1]) - 1

    def exact_system(self, alpha) -> Tuple[List[List[Fraction]], List[Fraction]]:
        """在有理數 α 精確代入,回傳 (係數矩陣, 右邊)"""
        names = self.unknowns
        matrix = [[c.coefficient(name).evaluate(alpha) for name in names] for c in self.constraints]
        rhs = [c.rhs.evaluate(alpha) for c in self.constraints]
        return matrix, rhs

    def numeric_system(self, alpha: float) -> Tuple[np.ndarray, np.ndarray]:
        """在浮點 α 代入的線性系統"""
        names = self.unknowns
        matrix = np.array(
            [[c.coefficient(name).evaluate_float(alpha) for name in names] for c in self.constraints],
            dtype=float,
        ).reshape(len(self.constraints), len(names))
        rhs = np.array([c.rhs.evaluate_float(alpha) for c in self.constraints], dtype=float)
        return matrix, rhs


@dataclass
class FeasiblePoint:
    """
    數值可行點:對稱 Gram 矩陣、鬆弛係數、margin 與殘差

    margin 是自由列 (未被方程固定為零的列) 組成的子矩陣的最小特徵值;
    被固定的列全為零,整個矩陣的最小特徵值見 min_eigenvalue,此時為 min(margin, 0)。
    """

    alpha: float
    gram: np.ndarray
    slacks: Dict[str, float]
    margin: float
    residual: float

    @property
    def min_eigenvalue(self) -> float:
        """整個 Gram 矩陣的最小特徵值"""
        return float(np.linalg.eigvalsh(self.gram).min()) if self.gram.size else 0.0

    def values(self) -> Dict[str, float]:
        """所有未知數的數值 (Gram 上三角 + 鬆弛)"""
        n = self.gram.shape[0]
        out = {entry_name(i, j): float(self.gram[i, j]) for i in range(n) for j in range(i, n)}
        out.update(self.slacks)
        return out


@dataclass
class Infeasible:
    """在容許誤差內找不到可行點;帶回最接近可行的點與違反量"""

    alpha: float
    best: Optional[FeasiblePoint]
    violation: float
    reason: str = ""


@dataclass(frozen=True)
class FittedParams:
    """每個自由參數的擬合多項式,係數為 1/round_denominator 的整數倍"""

    params: Dict[str, AlphaPoly]
    fit_degree: int
    round_denominator: int
    alpha_grid: Tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for name, poly in self.params.items():
            for c in poly.coeffs:
                if self.round_denominator % c.denominator != 0:
                    raise ValueError(f"參數 {name} 的係數 {c} 分母不整除 {self.round_denominator}")

    def __getitem__(self, name: str) -> AlphaPoly:
        return self.params[name]

    def names(self) -> List[str]:
        return list(self.params)
