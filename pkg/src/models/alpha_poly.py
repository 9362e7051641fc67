"""α 的有理係數多項式"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

Scalar = Union[int, Fraction]


def _to_fraction(value) -> Fraction:
    """轉換為 Fraction,拒絕浮點數以免精度流入符號運算"""
    if isinstance(value, bool):
        raise TypeError("布林值不是合法的係數")
    if isinstance(value, float):
        raise TypeError(f"符號運算不接受浮點係數: {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class AlphaPoly:
    """
    α 的多項式,係數為任意精度有理數

    coeffs[i] 是 α^i 的係數;零多項式為空元組,次數為 -1。
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = [_to_fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    # ---------- 建構 ----------

    @classmethod
    def zero(cls) -> "AlphaPoly":
        return cls(())

    @classmethod
    def one(cls) -> "AlphaPoly":
        return cls((1,))

    @classmethod
    def constant(cls, value) -> "AlphaPoly":
        return cls((value,))

    @classmethod
    def alpha(cls) -> "AlphaPoly":
        """單項式 α"""
        return cls((0, 1))

    @classmethod
    def linear(cls, root) -> "AlphaPoly":
        """α − root"""
        return cls((-_to_fraction(root), 1))

    @classmethod
    def from_strings(cls, values: Iterable[str]) -> "AlphaPoly":
        """由 "p/q" 字串列表建立 (升冪排列)"""
        try:
            return cls(tuple(Fraction(v) for v in values))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"無效的有理數係數: {values!r}") from e

    def to_strings(self) -> List[str]:
        """輸出為 "p/q" 字串列表,整數也帶分母"""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    # ---------- 屬性 ----------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        """最高次係數,零多項式回傳 0"""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return not self.is_zero

    # ---------- 環運算 ----------

    @staticmethod
    def _coerce(other) -> "AlphaPoly":
        if isinstance(other, AlphaPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return AlphaPoly((other,))
        return NotImplemented

    def __add__(self, other) -> "AlphaPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return AlphaPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "AlphaPoly":
        return AlphaPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "AlphaPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "AlphaPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "AlphaPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return AlphaPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return AlphaPoly(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "AlphaPoly":
        """僅支援除以非零純量;多項式除法請用 exact_div"""
        if isinstance(other, AlphaPoly):
            if not other.is_constant or other.is_zero:
                return NotImplemented
            other = other.constant_term
        value = _to_fraction(other)
        if value == 0:
            raise ZeroDivisionError("AlphaPoly 除以零")
        return AlphaPoly(tuple(c / value for c in self.coeffs))

    def __pow__(self, exponent: int) -> "AlphaPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"指數必須為非負整數: {exponent!r}")
        result = AlphaPoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ---------- 求值 ----------

    def evaluate(self, value: Scalar) -> Fraction:
        """在有理數點以 Horner 法精確求值"""
        x = _to_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_float(self, value: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * value + float(c)
        return acc

    def sign_at(self, value: Scalar) -> int:
        """
        在有理數點的符號

        以整數齊次式 Σ cᵢ·pⁱ·q^{n−i} (x = p/q, q > 0) 計算,不產生中間分數。
        """
        if self.is_zero:
            return 0
        x = _to_fraction(value)
        p, q = x.numerator, x.denominator
        coeffs = [int(c) for c in self.primitive().coeffs]
        acc, q_power = coeffs[-1], 1
        for c in reversed(coeffs[:-1]):
            q_power *= q
            acc = acc * p + c * q_power
        return (acc > 0) - (acc < 0)

    # ---------- 代數工具 ----------

    def derivative(self) -> "AlphaPoly":
        return AlphaPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def divmod(self, divisor: "AlphaPoly") -> Tuple["AlphaPoly", "AlphaPoly"]:
        """
        多項式帶餘除法

        Raises:
            ZeroDivisionError: 除數為零多項式
        """
        if divisor.is_zero:
            raise ZeroDivisionError("除數為零多項式")
        remainder = list(self.coeffs)
        d = divisor.degree
        lead = divisor.leading
        quotient = [Fraction(0)] * max(len(remainder) - d, 0)
        for shift in range(len(remainder) - 1 - d, -1, -1):
            factor = remainder[shift + d] / lead
            if factor == 0:
                continue
            quotient[shift] = factor
            for i, c in enumerate(divisor.coeffs):
                remainder[shift + i] -= factor * c
        return AlphaPoly(tuple(quotient)), AlphaPoly(tuple(remainder[:d] if d > 0 else ()))

    def exact_div(self, divisor: "AlphaPoly") -> "AlphaPoly":
        """
        整除;有餘數時拋出 ValueError

        Raises:
            ValueError: 不能整除
        """
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero:
            raise ValueError(f"{self} 無法被 {divisor} 整除")
        return quotient

    def monic(self) -> "AlphaPoly":
        if self.is_zero:
            return self
        return self / self.leading

    def gcd(self, other: "AlphaPoly") -> "AlphaPoly":
        """首一最大公因式;兩者皆零時回傳零"""
        a, b = self, other
        while not b.is_zero:
            _, r = a.divmod(b)
            a, b = b, r.primitive()
        return a.monic()

    def square_free_part(self) -> "AlphaPoly":
        """去除重根後的多項式 p / gcd(p, p′),保持原本的首項符號"""
        if self.is_constant:
            return self
        g = self.gcd(self.derivative())
        if g.is_constant:
            return self
        return self.exact_div(g)

    def primitive(self) -> "AlphaPoly":
        """正有理數倍數中係數為互質整數者;符號與根都不變"""
        if self.is_zero:
            return self
        scale = self.content_denominator()
        integers = [int(c * scale) for c in self.coeffs]
        content = 0
        for c in integers:
            content = math.gcd(content, c)
        return AlphaPoly(tuple(c // content for c in integers))

    def content_denominator(self) -> int:
        """所有係數分母的最小公倍數"""
        lcm = 1
        for c in self.coeffs:
            d = c.denominator
            lcm = lcm * d // math.gcd(lcm, d)
        return lcm

    # ---------- 輸出 ----------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            magnitude = abs(c)
            if i == 0:
                body = str(magnitude)
            else:
                power = "α" if i == 1 else f"α^{i}"
                body = power if magnitude == 1 else f"{magnitude}·{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"AlphaPoly({self})"
