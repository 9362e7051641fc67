"""α-傾斜動差符號與動差表示式

記號:p_n 表示 ∂ⁿp/∂xⁿ,p̄_n = p_n / p,E[·] 為 α-傾斜期望值
E_α[g] = ∫ g p^α dx / ∫ p^α dx。
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from ..errors import HomogeneityViolation, NonCanonical
from .alpha_poly import AlphaPoly

Factors = Tuple[Tuple[int, int], ...]
FactorInput = Union[Mapping[int, int], Iterable[Tuple[int, int]]]


def freeze_factors(factors: FactorInput) -> Factors:
    """
    將因子對應 (階數 → 指數) 轉為排序後的元組

    指數為 0 的項會被略去;同階數會合併。

    Raises:
        ValueError: 階數 < 1 或指數 < 0
    """
    items = factors.items() if isinstance(factors, Mapping) else factors
    merged: Dict[int, int] = {}
    for order, exponent in items:
        order, exponent = int(order), int(exponent)
        if order < 1:
            raise ValueError(f"導數階數必須 ≥ 1: {order}")
        if exponent < 0:
            raise ValueError(f"指數必須 ≥ 0: {exponent}")
        if exponent:
            merged[order] = merged.get(order, 0) + exponent
    return tuple(sorted(merged.items()))


def total_order(factors: Factors) -> int:
    """總導數階數 D = Σ n·k_n"""
    return sum(order * exponent for order, exponent in factors)


def is_canonical(factors: Factors) -> bool:
    """空集合,或最高階數的指數 ≥ 2"""
    if not factors:
        return True
    return factors[-1][1] >= 2


def _render_factors(factors: Factors) -> str:
    parts = []
    for order, exponent in factors:
        parts.append(f"p̄{order}" if exponent == 1 else f"p̄{order}^{exponent}")
    return " ".join(parts)


@dataclass(frozen=True)
class MomentSymbol:
    """標準形式的動差 E_α[∏ p̄_n^{k_n}];空因子代表單位元 E_α[1] = 1"""

    factors: Factors = ()

    def __post_init__(self):
        frozen = freeze_factors(self.factors)
        if not is_canonical(frozen):
            raise NonCanonical(f"因子 {dict(frozen)} 不是標準形式,需先經分部積分化簡")
        object.__setattr__(self, "factors", frozen)

    @classmethod
    def unit(cls) -> "MomentSymbol":
        return cls(())

    @property
    def is_unit(self) -> bool:
        return not self.factors

    @property
    def total_order(self) -> int:
        return total_order(self.factors)

    @property
    def max_order(self) -> int:
        return self.factors[-1][0] if self.factors else 0

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    def sort_key(self) -> Tuple[int, Factors]:
        """(總階數, 因子字典序)"""
        return (self.total_order, self.factors)

    def __str__(self) -> str:
        if self.is_unit:
            return "1"
        return f"E[{_render_factors(self.factors)}]"


def moment_make(factors: FactorInput) -> MomentSymbol:
    """
    建立標準動差符號

    Raises:
        NonCanonical: 因子組合可被分部積分再化簡 (例如 {2: 1})
    """
    return MomentSymbol(freeze_factors(factors))


def _sorted_symbols(symbols: Iterable[MomentSymbol]) -> Tuple[MomentSymbol, ...]:
    return tuple(sorted((s for s in symbols if not s.is_unit), key=MomentSymbol.sort_key))


@dataclass(frozen=True)
class MomentTerm:
    """係數 × 動差乘積 (多重集合,不含單位元)"""

    coefficient: AlphaPoly
    symbols: Tuple[MomentSymbol, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "symbols", _sorted_symbols(self.symbols))

    @property
    def total_order(self) -> int:
        return sum(s.total_order for s in self.symbols)

    def key(self) -> Tuple[Tuple[int, Factors], ...]:
        return tuple(s.sort_key() for s in self.symbols)

    def multiplicities(self) -> List[Tuple[MomentSymbol, int]]:
        """各相異符號及其次數,依標準順序"""
        counts = Counter(self.symbols)
        return sorted(counts.items(), key=lambda item: item[0].sort_key())

    def __str__(self) -> str:
        body = "·".join(_render_power(sym, power) for sym, power in self.multiplicities())
        coeff = str(self.coefficient)
        if not body:
            return coeff
        if self.coefficient == AlphaPoly.one():
            return body
        return f"({coeff})·{body}"


def _render_power(symbol: MomentSymbol, power: int) -> str:
    return str(symbol) if power == 1 else f"({symbol})^{power}"


def _term_order_key(term: MomentTerm):
    return (term.total_order, len(term.symbols), term.key())


@dataclass(frozen=True)
class MomentExpr:
    """
    動差乘積的 AlphaPoly 線性組合

    直接建構時不做正規化;所有算術運算都回傳正規化後的結果。
    """

    terms: Tuple[MomentTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    # ---------- 建構 ----------

    @classmethod
    def zero(cls) -> "MomentExpr":
        return cls(())

    @classmethod
    def constant(cls, value) -> "MomentExpr":
        poly = value if isinstance(value, AlphaPoly) else AlphaPoly.constant(value)
        return cls((MomentTerm(poly, ()),)).normalize()

    @classmethod
    def one(cls) -> "MomentExpr":
        return cls.constant(1)

    @classmethod
    def of(cls, *symbols: MomentSymbol, coefficient=1) -> "MomentExpr":
        """單一項 coefficient · ∏ symbols"""
        poly = coefficient if isinstance(coefficient, AlphaPoly) else AlphaPoly.constant(coefficient)
        return cls((MomentTerm(poly, tuple(symbols)),)).normalize()

    # ---------- 正規化 ----------

    def normalize(self) -> "MomentExpr":
        """合併同類項、去除零係數、套用標準排序;冪等"""
        merged: Dict[Tuple[MomentSymbol, ...], AlphaPoly] = {}
        for term in self.terms:
            key = _sorted_symbols(term.symbols)
            merged[key] = merged.get(key, AlphaPoly.zero()) + term.coefficient
        terms = [MomentTerm(coeff, key) for key, coeff in merged.items() if not coeff.is_zero]
        terms.sort(key=_term_order_key)
        return MomentExpr(tuple(terms))

    # ---------- 運算 ----------

    def __add__(self, other: "MomentExpr") -> "MomentExpr":
        if not isinstance(other, MomentExpr):
            return NotImplemented
        return MomentExpr(self.terms + other.terms).normalize()

    def __neg__(self) -> "MomentExpr":
        return MomentExpr(tuple(MomentTerm(-t.coefficient, t.symbols) for t in self.terms))

    def __sub__(self, other: "MomentExpr") -> "MomentExpr":
        if not isinstance(other, MomentExpr):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "MomentExpr":
        """乘上 AlphaPoly 或有理數"""
        poly = factor if isinstance(factor, AlphaPoly) else AlphaPoly.constant(factor)
        if poly.is_zero:
            return MomentExpr.zero()
        return MomentExpr(
            tuple(MomentTerm(t.coefficient * poly, t.symbols) for t in self.terms)
        ).normalize()

    def __mul__(self, other) -> "MomentExpr":
        if isinstance(other, MomentExpr):
            products = []
            for a in self.terms:
                for b in other.terms:
                    products.append(MomentTerm(a.coefficient * b.coefficient, a.symbols + b.symbols))
            return MomentExpr(tuple(products)).normalize()
        if isinstance(other, (AlphaPoly, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "MomentExpr":
        if isinstance(other, (AlphaPoly, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "MomentExpr":
        result = MomentExpr.one()
        for _ in range(exponent):
            result = result * self
        return result

    def exact_div(self, divisor: AlphaPoly) -> "MomentExpr":
        """
        每個係數整除 divisor

        Raises:
            ValueError: 有係數無法整除
        """
        return MomentExpr(
            tuple(MomentTerm(t.coefficient.exact_div(divisor), t.symbols) for t in self.terms)
        ).normalize()

    def substitute_alpha(self, value) -> "MomentExpr":
        """以有理數精確代入 α"""
        return MomentExpr(
            tuple(
                MomentTerm(AlphaPoly.constant(t.coefficient.evaluate(value)), t.symbols)
                for t in self.terms
            )
        ).normalize()

    # ---------- 查詢 ----------

    def coefficient_of(self, *symbols: MomentSymbol) -> AlphaPoly:
        key = _sorted_symbols(symbols)
        for term in self.normalize().terms:
            if term.symbols == key:
                return term.coefficient
        return AlphaPoly.zero()

    @property
    def is_zero(self) -> bool:
        return not self.normalize().terms

    @property
    def is_product_free(self) -> bool:
        """每一項至多一個動差符號"""
        return all(len(t.symbols) <= 1 for t in self.terms)

    def symbols(self) -> List[MomentSymbol]:
        """出現過的相異符號 (標準順序)"""
        seen = {s for t in self.terms for s in t.symbols}
        return sorted(seen, key=MomentSymbol.sort_key)

    def total_orders(self) -> List[int]:
        return sorted({t.total_order for t in self.terms})

    def __iter__(self) -> Iterator[MomentTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MomentExpr):
            return NotImplemented
        return self.normalize().terms == other.normalize().terms

    def __hash__(self) -> int:
        return hash(self.normalize().terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class RawIntegral:
    """未正規化的積分 ∫ p^{α+offset} ∏ p_n^{k_n} dx"""

    offset: int
    factors: Factors = ()

    def __post_init__(self):
        frozen = freeze_factors(self.factors)
        object.__setattr__(self, "factors", frozen)
        expected = -sum(exponent for _, exponent in frozen)
        if self.offset != expected:
            raise HomogeneityViolation(
                f"p 的次方偏移量 {self.offset} 與因子 {dict(frozen)} 不一致 (應為 {expected})"
            )

    @classmethod
    def of(cls, factors: FactorInput) -> "RawIntegral":
        """依因子自動推算偏移量"""
        frozen = freeze_factors(factors)
        return cls(-sum(exponent for _, exponent in frozen), frozen)

    @property
    def total_order(self) -> int:
        return total_order(self.factors)

    def __str__(self) -> str:
        power = "α" if self.offset == 0 else f"α{self.offset:+d}"
        body = " ".join(
            f"p{order}" if exponent == 1 else f"p{order}^{exponent}"
            for order, exponent in self.factors
        )
        return f"∫p^({power}) {body} dx".replace("  ", " ")
