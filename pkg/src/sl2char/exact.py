"""Exact numbers a + b*sqrt(q) with rational a, b.

Discriminants and formal degrees are powers q**(e/2) with e an integer, so
every closed-form case value of the character tables lives in Q(sqrt(q)).
Since q is prime, sqrt(q) is irrational and sign tests are exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Surd:
    a: Fraction
    b: Fraction
    q: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def rational(cls, x, q: int) -> "Surd":
        return cls(Fraction(x), Fraction(0), q)

    @classmethod
    def qpow(cls, e2: int, q: int, coeff=1) -> "Surd":
        """coeff * q**(e2/2)."""
        whole, half = divmod(e2, 2)
        c = Fraction(coeff) * Fraction(q) ** whole
        return cls(Fraction(0), c, q) if half else cls(c, Fraction(0), q)

    def _lift(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.q != self.q:
                raise ValueError("mixing Q(sqrt(q)) for different q")
            return other
        return Surd.rational(other, self.q)

    def __add__(self, other):
        o = self._lift(other)
        return Surd(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Surd(self.a * o.a + self.q * self.b * o.b, self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def inv(self) -> "Surd":
        n = self.a * self.a - self.q * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(sqrt(q))")
        return Surd(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        return self * self._lift(other).inv()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inv()

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with q b^2
        d = self.a * self.a - self.q * self.b * self.b
        return sa if d > 0 else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Surd.rational(other, self.q)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.q == other.q and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.q})"
        return f"{self.a}+{self.b}*sqrt({self.q})"
