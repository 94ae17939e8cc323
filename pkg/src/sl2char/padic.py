"""Truncated p-adic arithmetic in k = Q_p and its quadratic extensions k(sqrt(theta)).

Scalars use a capped-relative model: every value carries its valuation, a
unit known modulo ``p**prec`` and the number ``prec`` of correct digits
(capped at the context precision ``N``).  Cancellation in a sum shrinks the
precision; if every digit cancels the result is an *inexact zero* whose
valuation is only known from below.  Asking an inexact zero for its valuation
raises :class:`PrecisionLoss` rather than guessing.

Valuations on the ramified extensions are half-integers, so extension
elements report ``val2`` -- twice the valuation -- and all comparisons stay in
the integers.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, DomainError, PrecisionLoss, UndefinedForZero

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise UndefinedForZero("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def legendre(u: int, p: int) -> int:
    """Legendre symbol (u/p) for an odd prime p, by Euler's criterion."""
    u %= p
    if u == 0:
        return 0
    return 1 if pow(u, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    for u in range(2, p):
        if legendre(u, p) == -1:
            return u
    raise DomainError(f"no quadratic non-residue mod {p}")


def sqrt_mod_p(u: int, p: int) -> int:
    """Square root of a nonzero quadratic residue mod an odd prime (Tonelli-Shanks)."""
    u %= p
    if legendre(u, p) != 1:
        raise DomainError(f"{u} is not a nonzero square mod {p}")
    if p % 4 == 3:
        return pow(u, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(u, q, p), pow(u, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def hensel_sqrt(u: int, p: int, k: int) -> int:
    """Square root of a p-adic unit square modulo p**k, congruent to sqrt_mod_p(u)."""
    r = sqrt_mod_p(u, p)
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        # Newton step r <- (r + u/r)/2
        r = (r + u * pow(r, -1, mod)) * pow(2, -1, mod) % mod
    return r % p**k


class ThetaLabel(enum.Enum):
    EPS = "eps"
    PI = "pi"
    EPS_PI = "eps_pi"

    @property
    def v2(self) -> int:
        """Valuation of theta, which is twice the valuation of sqrt(theta)."""
        return 0 if self is ThetaLabel.EPS else 1

    @property
    def ramified(self) -> bool:
        return self is not ThetaLabel.EPS

    @classmethod
    def parse(cls, text: str) -> "ThetaLabel":
        try:
            return cls(text)
        except ValueError:
            raise DomainError(f"unknown theta label {text!r}") from None


@dataclass(frozen=True)
class FieldContext:
    """Base field Q_p at working precision N, with the fixed non-residue epsilon."""

    p: int
    N: int
    eps: int = 0

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 5:
            raise DomainError(f"p must be a prime >= 5 (p >= 2e+3 with e = 1), got {self.p}")
        if self.N < 1:
            raise DomainError("precision N must be >= 1")
        if self.eps == 0:
            object.__setattr__(self, "eps", least_nonresidue(self.p))
        if legendre(self.eps, self.p) != -1:
            raise DomainError(f"eps={self.eps} is a square mod {self.p}")

    @property
    def q(self) -> int:
        return self.p

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def theta_int(self, theta: ThetaLabel) -> int:
        return {ThetaLabel.EPS: self.eps, ThetaLabel.PI: self.p, ThetaLabel.EPS_PI: self.eps * self.p}[theta]

    def scalar(self, value) -> "PadicScalar":
        return PadicScalar.from_rational(self, value)

    def theta(self, theta: ThetaLabel) -> "PadicScalar":
        return self.scalar(self.theta_int(theta))

    def zero(self) -> "PadicScalar":
        return PadicScalar(self, INF, 0, self.N)

    def one(self) -> "PadicScalar":
        return PadicScalar(self, 0, 1, self.N)


@dataclass(frozen=True, eq=False)
class PadicScalar:
    ctx: FieldContext
    val: int | float
    unit: int
    prec: int

    # construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, ctx: FieldContext, value) -> "PadicScalar":
        if isinstance(value, PadicScalar):
            return value
        value = Fraction(value)
        if value == 0:
            return ctx.zero()
        p, N = ctx.p, ctx.N
        num, den = value.numerator, value.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p**N
        return cls(ctx, v, num * pow(den, -1, mod) % mod, N)

    @classmethod
    def inexact_zero(cls, ctx: FieldContext, absprec: int) -> "PadicScalar":
        return cls(ctx, absprec, 0, 0)

    # predicates -------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return self.val == INF

    @property
    def is_inexact_zero(self) -> bool:
        return self.unit == 0 and self.val != INF

    @property
    def absprec(self) -> int | float:
        return self.val + self.prec if self.unit else self.val

    def valuation(self) -> int | float:
        if self.is_inexact_zero:
            raise PrecisionLoss(f"value is zero to precision O(p^{self.val})")
        return self.val

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.ctx != self.ctx:
                raise DomainError("operands belong to different field contexts")
            return other
        return PadicScalar.from_rational(self.ctx, other)

    def __add__(self, other):
        y = self._coerce(other)
        x = self
        if x.is_exact_zero:
            return y
        if y.is_exact_zero:
            return x
        p = x.ctx.p
        ap = min(x.absprec, y.absprec)
        v = min(x.val, y.val)
        if v >= ap:
            return PadicScalar.inexact_zero(x.ctx, ap)
        mod = p ** (ap - v)
        s = (x.unit * p ** (x.val - v) + y.unit * p ** (y.val - v)) % mod
        if s == 0:
            return PadicScalar.inexact_zero(x.ctx, ap)
        k = vp(s, p)
        prec = min(ap - v - k, x.ctx.N)
        return PadicScalar(x.ctx, v + k, (s // p**k) % p**prec, prec)

    __radd__ = __add__

    def __neg__(self):
        if not self.unit:
            return self
        return PadicScalar(self.ctx, self.val, (-self.unit) % self.ctx.p**self.prec, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        y = self._coerce(other)
        x = self
        if x.is_exact_zero or y.is_exact_zero:
            return x.ctx.zero()
        if x.is_inexact_zero or y.is_inexact_zero:
            return PadicScalar.inexact_zero(x.ctx, x.val + y.val)
        prec = min(x.prec, y.prec)
        return PadicScalar(x.ctx, x.val + y.val, x.unit * y.unit % x.ctx.p**prec, prec)

    __rmul__ = __mul__

    def inv(self) -> "PadicScalar":
        if self.is_exact_zero:
            raise DivisionByZero("inverse of 0")
        if self.is_inexact_zero:
            raise PrecisionLoss("inverse of a value indistinguishable from 0")
        mod = self.ctx.p**self.prec
        return PadicScalar(self.ctx, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # helpers -----------------------------------------------------------

    def residue(self, k: int) -> int:
        """Integer representative modulo p**k of an integral element."""
        if k <= 0:
            return 0
        if self.is_exact_zero:
            return 0
        if self.val >= k:
            return 0
        if self.val < 0:
            raise DomainError("residue of a non-integral element")
        if self.absprec < k:
            raise PrecisionLoss(f"need {k} digits, have O(p^{self.absprec})")
        p = self.ctx.p
        return self.unit * p**self.val % p**k

    def unit_residue(self) -> int:
        """The unit part reduced mod p."""
        self.valuation()
        if self.is_exact_zero:
            raise UndefinedForZero("unit part of 0")
        return self.unit % self.ctx.p

    def sqrt(self) -> "PadicScalar":
        if self.is_exact_zero:
            return self
        if not is_square(self):
            raise DomainError("not a square in Q_p")
        p = self.ctx.p
        return PadicScalar(self.ctx, self.val // 2, hensel_sqrt(self.unit, p, self.prec), self.prec)

    def same_as(self, other) -> bool:
        """Equality up to the smaller of the two precisions."""
        y = self._coerce(other)
        d = self - y
        return d.is_exact_zero or d.is_inexact_zero

    def __eq__(self, other):
        if not isinstance(other, (PadicScalar, int, Fraction)):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.ctx, self.val, self.unit, self.prec))

    def __repr__(self):
        if self.is_exact_zero:
            return "PadicScalar(0)"
        if self.is_inexact_zero:
            return f"PadicScalar(O(p^{self.val}))"
        return f"PadicScalar(p^{self.val} * {self.unit} + O(p^{self.absprec}))"


def is_square(x: PadicScalar) -> bool:
    v = x.valuation()
    if v == INF:
        raise UndefinedForZero("is_square(0)")
    return v % 2 == 0 and legendre(x.unit, x.ctx.p) == 1


@dataclass(frozen=True, eq=False)
class QuadExtScalar:
    """The element a + b*sqrt(theta) of k_theta."""

    theta: ThetaLabel
    a: PadicScalar
    b: PadicScalar

    @property
    def ctx(self) -> FieldContext:
        return self.a.ctx

    @classmethod
    def make(cls, ctx: FieldContext, theta: ThetaLabel, a, b=0) -> "QuadExtScalar":
        return cls(theta, PadicScalar.from_rational(ctx, a), PadicScalar.from_rational(ctx, b))

    def _coerce(self, other) -> "QuadExtScalar":
        if isinstance(other, QuadExtScalar):
            if other.theta is not self.theta:
                raise DomainError("operands live in different quadratic extensions")
            return other
        return QuadExtScalar(self.theta, self.a._coerce(other), self.ctx.zero())

    def __add__(self, other):
        y = self._coerce(other)
        return QuadExtScalar(self.theta, self.a + y.a, self.b + y.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(self.theta, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        y = self._coerce(other)
        t = self.ctx.theta(self.theta)
        return QuadExtScalar(
            self.theta, self.a * y.a + t * self.b * y.b, self.a * y.b + self.b * y.a
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadExtScalar":
        return QuadExtScalar(self.theta, self.a, -self.b)

    def norm(self) -> PadicScalar:
        return self.a * self.a - self.ctx.theta(self.theta) * self.b * self.b

    def trace(self) -> PadicScalar:
        return self.a + self.a

    def inv(self) -> "QuadExtScalar":
        n = self.norm()
        if n.is_exact_zero:
            raise DivisionByZero("inverse of 0")
        ninv = n.inv()
        c = self.conj()
        return QuadExtScalar(self.theta, c.a * ninv, c.b * ninv)

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = QuadExtScalar(self.theta, self.ctx.one(), self.ctx.zero())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def val2(self) -> int | float:
        """Twice the valuation: min(2 v(a), 2 v(b) + v(theta))."""
        known, bound = INF, INF
        for comp, shift in ((self.a, 0), (self.b, self.theta.v2)):
            if comp.is_exact_zero:
                continue
            if comp.is_inexact_zero:
                bound = min(bound, 2 * comp.val + shift)
            else:
                known = min(known, 2 * comp.val + shift)
        if bound <= known:
            raise PrecisionLoss("valuation not determined at working precision")
        return known

    val_half = val2

    def __repr__(self):
        return f"QuadExtScalar({self.a!r} + {self.b!r}*sqrt({self.theta.value}))"


def norm(x: QuadExtScalar) -> PadicScalar:
    return x.norm()


def conj(x: QuadExtScalar) -> QuadExtScalar:
    return x.conj()


def val_half(x: QuadExtScalar) -> int | float:
    return x.val2()


@lru_cache(maxsize=None)
def square_table(p: int) -> frozenset:
    """Nonzero squares mod p by exhaustion."""
    return frozenset(x * x % p for x in range(1, p))
