"""符號掃描報告資料模型"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import List, Optional, Tuple

from .derivative import EntropyKind
from .mixture import MixtureDensity


@dataclass(frozen=True)
class ViolationBracket:
    """與 (−1)^{k−1} 相反符號出現的 t 區間"""

    t_lo: float
    t_hi: float
    value: float
    error: float
    spectral_value: Optional[float] = None

    @property
    def width(self) -> float:
        return self.t_hi - self.t_lo


@dataclass
class ScanSeries:
    """固定 (k, α) 的一條 t 掃描"""

    order: int
    alpha: float
    t_grid: Tuple[float, ...]
    values: List[Optional[float]] = field(default_factory=list)
    errors: List[Optional[float]] = field(default_factory=list)
    violations: List[ViolationBracket] = field(default_factory=list)
    cell_errors: List[Tuple[float, str]] = field(default_factory=list)

    @property
    def expected_sign(self) -> int:
        return 1 if self.order % 2 == 1 else -1

    @property
    def signs(self) -> List[int]:
        """每個格點的數值符號 (失敗的格點記為 0)"""
        out = []
        for v in self.values:
            if v is None:
                out.append(0)
            else:
                out.append((v > 0) - (v < 0))
        return out

    @property
    def has_violation(self) -> bool:
        return bool(self.violations)


@dataclass
class SignScanReport:
    """整個掃描的結果"""

    kind: EntropyKind
    density: MixtureDensity
    series: List[ScanSeries] = field(default_factory=list)
    generated_at: datetime = field(default_factory=datetime.now)

    def find(self, order: int, alpha: float) -> Optional[ScanSeries]:
        for s in self.series:
            if s.order == order and abs(s.alpha - alpha) < 1e-12:
                return s
        return None

    @property
    def violating_pairs(self) -> List[Tuple[int, float]]:
        return [(s.order, s.alpha) for s in self.series if s.has_violation]

    @property
    def total_cells(self) -> int:
        return sum(len(s.t_grid) for s in self.series)

    def get_summary(self) -> dict:
        return {
            "kind": self.kind.value,
            "series": len(self.series),
            "cells": self.total_cells,
            "violating_pairs": len(self.violating_pairs),
            "failed_cells": sum(len(s.cell_errors) for s in self.series),
        }
