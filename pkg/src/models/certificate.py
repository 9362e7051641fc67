"""多項式矩陣與正定性證書"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .alpha_poly import AlphaPoly

Interval = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PolyMatrix:
    """AlphaPoly 元素的對稱方陣"""

    entries: Tuple[Tuple[AlphaPoly, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        n = len(rows)
        if n < 1:
            raise ValueError("矩陣至少需要 1×1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("矩陣必須為方陣")
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise ValueError(f"矩陣不對稱: ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix":
        return cls(
            tuple(
                tuple(v if isinstance(v, AlphaPoly) else AlphaPoly.constant(v) for v in row)
                for row in rows
            )
        )

    @classmethod
    def diagonal(cls, values: Sequence[AlphaPoly]) -> "PolyMatrix":
        n = len(values)
        zero = AlphaPoly.zero()
        return cls(tuple(tuple(values[i] if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> AlphaPoly:
        i, j = index
        return self.entries[i][j]

    def evaluate(self, alpha) -> List[List[Fraction]]:
        return [[p.evaluate(alpha) for p in row] for row in self.entries]

    def evaluate_float(self, alpha: float) -> np.ndarray:
        return np.array([[p.evaluate_float(alpha) for p in row] for row in self.entries], dtype=float)

    def submatrix(self, indices: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(self.entries[i][j] for j in indices) for i in indices))

    def zero_rows(self) -> List[int]:
        """整列恆為零多項式的索引"""
        return [i for i, row in enumerate(self.entries) if all(p.is_zero for p in row)]


class Verdict(str, Enum):
    """正定性判定"""

    POSITIVE_DEFINITE = "positive-definite"
    PSD_AT_ENDPOINT = "positive-semidefinite-at-endpoint"
    FAILED = "failed"


@dataclass(frozen=True)
class PolynomialEvidence:
    """單一多項式在開區間上恆正的證據"""

    poly: AlphaPoly
    interval: Interval
    roots_in_interval: int
    midpoint_sign: int
    identically_zero: bool = False

    @property
    def certified(self) -> bool:
        if self.identically_zero:
            return True
        return self.roots_in_interval == 0 and self.midpoint_sign > 0


@dataclass(frozen=True)
class PositivityCertificate:
    """
    矩陣在 α 區間上正定的精確證書

    perturbations 記錄因端點為根而向內移動的端點 (原值, 新值)。
    """

    interval: Interval
    minors: Tuple[PolynomialEvidence, ...]
    slacks: Tuple[PolynomialEvidence, ...]
    verdict: Verdict
    certified_interval: Optional[Interval] = None
    perturbations: Tuple[Tuple[Fraction, Fraction], ...] = field(default_factory=tuple)
    zero_rows: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.verdict != Verdict.FAILED
