"""熵導數結果資料模型"""

from dataclasses import dataclass
from enum import Enum

from .moment import MomentExpr


class EntropyKind(str, Enum):
    """熵的種類"""

    RENYI = "renyi"
    TSALLIS = "tsallis"
    SHANNON = "shannon"

    @classmethod
    def parse(cls, value: str) -> "EntropyKind":
        """
        由字串解析

        Raises:
            ValueError: 不認得的熵種類
        """
        try:
            return cls(value.strip().lower())
        except ValueError as e:
            raise ValueError(f"未知的熵種類: {value}") from e


@dataclass(frozen=True)
class DerivativeResult:
    """
    k 階 t 導數

    Tsallis 結果帶有隱含因子 Z = ∫p^α dx 的 normalizer_power 次方;
    Rényi / Shannon 的 normalizer_power 為 0。
    """

    kind: EntropyKind
    order: int
    expr: MomentExpr
    normalizer_power: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"導數階數必須 ≥ 1: {self.order}")
        expected = 1 if self.kind == EntropyKind.TSALLIS else 0
        if self.normalizer_power != expected:
            raise ValueError(f"{self.kind.value} 的 normalizer_power 應為 {expected}")
        if self.kind == EntropyKind.TSALLIS and not self.expr.is_product_free:
            raise ValueError("Tsallis 導數表示式不可含動差乘積")

    @property
    def sign(self) -> int:
        """完全單調性要求的符號 (−1)^{k−1}"""
        return 1 if self.order % 2 == 1 else -1

    def __str__(self) -> str:
        prefix = "Z·" if self.normalizer_power else ""
        return f"d^{self.order}/dt^{self.order} {self.kind.value} = {prefix}[{self.expr}]"
