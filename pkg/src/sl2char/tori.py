"""Elliptic and split tori of SL(2, k), their elements, and depth data.

An elliptic torus element is a norm-one element lambda = a + b*sqrt(theta) of
k_theta, viewed as the matrix [[a, b], [b*theta, a]].  A split one is
diag(lambda, 1/lambda) with lambda in k^x.  Every element carries its
conjugacy-class label; nothing here tries to recover the label by conjugacy.

All depths are stored doubled ("half-units") so that ramified depths, which are
half-integers, compare as integers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import DomainError, NoSuchElement, NotRegular, PrecisionLoss
from .padic import (
    INF,
    FieldContext,
    PadicScalar,
    QuadExtScalar,
    ThetaLabel,
    legendre,
)

SPLIT = "split"


@dataclass(frozen=True, order=True)
class TorusClass:
    """A G-conjugacy class of maximal tori: (theta, eta), or the split torus.

    ``theta`` is a ThetaLabel value string ("eps", "pi", "eps_pi") or "split".
    ``eta`` is "1" or "pi" for the unramified theta, "1" or "eps" for the
    ramified ones, and "" for the split torus.
    """

    theta: str
    eta: str = ""

    def __post_init__(self):
        if self.theta == SPLIT:
            if self.eta:
                raise DomainError("the split torus has no eta refinement")
            return
        th = ThetaLabel.parse(self.theta)
        allowed = ("1", "pi") if th is ThetaLabel.EPS else ("1", "eps")
        if self.eta not in allowed:
            raise DomainError(f"eta={self.eta!r} is not a refinement of theta={self.theta}")

    @classmethod
    def parse(cls, text: str) -> "TorusClass":
        text = text.strip()
        if text == SPLIT:
            return cls(SPLIT)
        theta, _, eta = text.partition(",")
        if not eta:
            eta = text.partition(":")[2]
            theta = text.partition(":")[0] if eta else theta
        return cls(theta.strip(), (eta or "1").strip())

    @property
    def is_split(self) -> bool:
        return self.theta == SPLIT

    @property
    def label(self) -> ThetaLabel | None:
        return None if self.is_split else ThetaLabel(self.theta)

    @property
    def ramified(self) -> bool:
        return not self.is_split and self.label.ramified

    def __str__(self):
        return SPLIT if self.is_split else f"{self.theta},{self.eta}"


def legal_classes(ctx: FieldContext, include_split: bool = False) -> list[TorusClass]:
    """Elliptic torus classes of SL(2, Q_p), optionally followed by the split one.

    Two unramified classes always; the two ramified theta each give one class,
    or two when -1 is not a square mod p.
    """
    out = [TorusClass("eps", "1"), TorusClass("eps", "pi"), TorusClass("pi", "1"), TorusClass("eps_pi", "1")]
    if legendre(ctx.p - 1, ctx.p) == -1:
        out += [TorusClass("pi", "eps"), TorusClass("eps_pi", "eps")]
    if include_split:
        out.append(TorusClass(SPLIT))
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NormOneElement:
    x: QuadExtScalar

    def __post_init__(self):
        d = self.x.norm() - 1
        if not (d.is_exact_zero or d.is_inexact_zero):
            raise DomainError(f"norm of {self.x!r} is not 1 at working precision")

    @classmethod
    def from_b(cls, ctx: FieldContext, theta: ThetaLabel, b, sign: int = 1) -> "NormOneElement":
        """The element sign*sqrt(1 + theta*b^2) + b*sqrt(theta), for b with 1+theta*b^2 a unit square."""
        b = PadicScalar.from_rational(ctx, b)
        a2 = ctx.one() + ctx.theta(theta) * b * b
        if a2.valuation() != 0 or legendre(a2.unit, ctx.p) != 1:
            raise NoSuchElement("1 + theta*b^2 is not a unit square")
        a = a2.sqrt()
        if a.unit % ctx.p != 1:
            a = -a
        return cls(QuadExtScalar(theta, a * sign, b))

    @classmethod
    def from_a_residue(cls, ctx: FieldContext, theta: ThetaLabel, a, sign: int = 1) -> "NormOneElement":
        """Lift a value of a to a norm-one element by solving for b (theta unramified)."""
        a = PadicScalar.from_rational(ctx, a)
        rhs = (a * a - 1) / ctx.theta(theta)
        if rhs.valuation() % 2 or legendre(rhs.unit, ctx.p) != 1:
            raise NoSuchElement("(a^2 - 1)/theta is not a square")
        return cls(QuadExtScalar(theta, a, rhs.sqrt() * sign))

    @property
    def ctx(self) -> FieldContext:
        return self.x.ctx

    def __mul__(self, other: "NormOneElement") -> "NormOneElement":
        return NormOneElement(self.x * other.x)

    def inv(self) -> "NormOneElement":
        return NormOneElement(self.x.conj())

    def __neg__(self):
        return NormOneElement(-self.x)

    def key(self, ka: int, kb: int) -> tuple[int, int]:
        return self.x.a.residue(ka), self.x.b.residue(kb)


@dataclass(frozen=True)
class DepthData:
    """Depth quantities in half-units: d2 = 2*d and so on."""

    d2: int
    d_minus2: int
    d_plus2: int
    sd2: int

    @property
    def d(self) -> Fraction:
        return Fraction(self.d2, 2)

    @property
    def d_minus(self) -> Fraction:
        return Fraction(self.d_minus2, 2)

    @property
    def d_plus(self) -> Fraction:
        return Fraction(self.d_plus2, 2)

    @property
    def sd(self) -> Fraction:
        return Fraction(self.sd2, 2)


def _val2_scalar(x: PadicScalar) -> int:
    try:
        v = x.valuation()
    except PrecisionLoss:
        raise NotRegular("element is central at working precision") from None
    if v == INF:
        raise NotRegular("element is central")
    return 2 * v


def _val2_ext(x: QuadExtScalar) -> int:
    try:
        v = x.val2()
    except PrecisionLoss:
        raise NotRegular("element is central at working precision") from None
    if v == INF:
        raise NotRegular("element is central")
    return v


@dataclass(frozen=True, eq=False)
class TorusElement:
    """A regular element of a labelled torus.

    ``lam`` is a QuadExtScalar of norm one for elliptic classes and a nonzero
    PadicScalar (the eigenvalue) for the split class.
    """

    cls: TorusClass
    lam: QuadExtScalar | PadicScalar
    name: str = ""

    def __post_init__(self):
        if self.cls.is_split:
            if not isinstance(self.lam, PadicScalar):
                raise DomainError("split torus elements are given by an eigenvalue in k")
            if self.lam.is_exact_zero or self.lam.is_inexact_zero:
                raise DomainError("eigenvalue must be nonzero")
        else:
            if not isinstance(self.lam, QuadExtScalar) or self.lam.theta is not self.cls.label:
                raise DomainError(f"element does not live in k_{self.cls.theta}")
            NormOneElement(self.lam)
        self.depth  # rejects central elements

    @property
    def ctx(self) -> FieldContext:
        return self.lam.ctx

    @property
    def is_split(self) -> bool:
        return self.cls.is_split

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.cls, -self.lam, f"-{self.name}" if self.name else "")

    def inv(self) -> "TorusElement":
        lam = self.lam.inv() if self.is_split else self.lam.conj()
        return TorusElement(self.cls, lam)

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if other.cls != self.cls:
            raise DomainError("product of elements of different tori")
        return TorusElement(self.cls, self.lam * other.lam)

    @cached_property
    def depth(self) -> DepthData:
        return depth_data(self)

    def norm_one(self) -> NormOneElement:
        if self.is_split:
            raise DomainError("split elements are not norm-one elements")
        return NormOneElement(self.lam)


def _split_depth2(lam: PadicScalar, shift: int) -> int:
    """min(v(lam - s), v(1/lam - s)) doubled, for s = shift in {1, -1}."""
    return min(_val2_scalar(lam - shift), _val2_scalar(lam.inv() - shift))


def depth_data(g: TorusElement) -> DepthData:
    lam = g.lam
    if g.is_split:
        d2 = _split_depth2(lam, 1)
        dm2 = _split_depth2(lam, -1)
        sq = lam * lam
        sd2 = max(_val2_scalar(sq - 1), _val2_scalar(sq.inv() - 1))
    else:
        d2 = _val2_ext(lam - 1)
        dm2 = _val2_ext(lam + 1)
        sd2 = _val2_ext(lam * lam - 1)
    return DepthData(d2, dm2, max(d2, dm2), sd2)


def weyl_discriminant(g: TorusElement) -> Fraction:
    """D(g) = q^(-2 d_plus(g)), exact."""
    return Fraction(g.ctx.q) ** (-g.depth.d_plus2)


def weyl_discriminant_adjoint(g: TorusElement) -> Fraction:
    """|det(Ad(g) - 1)| on g/g_gamma, computed from the eigenvalues lam^(+-2) of Ad(g)."""
    lam = g.lam
    if g.is_split:
        sq = lam * lam
        x = (g.ctx.one() - sq) * (g.ctx.one() - sq.inv())
    else:
        # 2 - lam^2 - lam^-2 with lam^-1 = conj(lam), a value in k
        x = 2 - (lam * lam).trace()
    v = x.valuation()
    return Fraction(g.ctx.q) ** (-v)


# --- enumeration of k^1 modulo a filtration step --------------------------


def key_moduli(theta: ThetaLabel, R: int) -> tuple[int, int]:
    """Digits (ka, kb) of (a, b) that determine the coset of (k^1)_{R/2+}."""
    return R // 2 + 1, (R - theta.v2) // 2 + 1


def enumerate_norm_one(ctx: FieldContext, theta: ThetaLabel, R: int):
    """Coset keys of k^1_theta / (k^1_theta)_{R/2+}.

    Returns arrays (a, b) sorted by a*mb + b, one pair per coset, where a is
    taken mod p^ka and b mod p^kb as given by ``key_moduli``.  Every solution
    of a^2 - theta*b^2 = 1 modulo p^ka lifts (Hensel: a or b is a unit with
    p odd), so reducing brute-force residues gives exactly the cosets.
    """
    ka, kb = key_moduli(theta, R)
    if ka + 2 > ctx.N:
        raise PrecisionLoss(f"depth {R}/2 needs precision > {ka + 1}, have N={ctx.N}")
    a, b = _kernels.norm_one_residues(ctx.p, ctx.theta_int(theta), ka)
    mb = ctx.p**kb
    codes = np.unique(a * mb + b % mb)
    return codes // mb, codes % mb


def quotient_order(q: int, theta: ThetaLabel, R: int) -> int:
    """|k^1_theta / (k^1_theta)_{R/2+}| in closed form."""
    if theta.ramified:
        return 2 * q ** ((R + 1) // 2)
    return (q + 1) * q ** (R // 2)


# --- representatives --------------------------------------------------------


def canonical_element(ctx: FieldContext, cls: TorusClass, d2: int, sign: int = 1) -> TorusElement:
    """sign * gamma_d, the element with b = p^m (elliptic) or 1 + p^m (split) of depth d2/2."""
    if cls.is_split:
        if d2 % 2 or d2 <= 0:
            raise NoSuchElement("split depth must be a positive integer")
        lam = ctx.scalar(1 + ctx.p ** (d2 // 2)) * sign
        name = f"1+p^{d2 // 2}"
        return TorusElement(cls, lam, f"-({name})" if sign < 0 else name)
    th = cls.label
    if (d2 - th.v2) % 2 or d2 <= 0:
        raise NoSuchElement(f"no element of depth {d2}/2 in class {cls}")
    m = (d2 - th.v2) // 2
    x = NormOneElement.from_b(ctx, th, ctx.p**m).x * sign
    return TorusElement(cls, x, f"{'-' if sign < 0 else ''}g[{d2}]")


def depth_zero_elements(ctx: FieldContext, cls: TorusClass) -> list[TorusElement]:
    """One lift of every residue of k^1_eps mod p other than +-1."""
    if cls.label is not ThetaLabel.EPS:
        raise DomainError("depth-zero residues are enumerated for the unramified torus only")
    a, b = _kernels.norm_one_residues(ctx.p, ctx.eps, 1)
    out = []
    for ai, bi in zip(a.tolist(), b.tolist()):
        if bi == 0:
            continue
        e = NormOneElement.from_a_residue(ctx, ThetaLabel.EPS, ai)
        if e.x.b.residue(1) != bi:
            e = NormOneElement(QuadExtScalar(ThetaLabel.EPS, e.x.a, -e.x.b))
        out.append(TorusElement(cls, e.x, f"r0[{ai},{bi}]"))
    return out


def random_element(ctx: FieldContext, cls: TorusClass, d2: int, seed: int = 0) -> TorusElement:
    """A regular element of ``cls`` with depth exactly d2/2, deterministic in ``seed``."""
    rng = random.Random(seed)
    p = ctx.p
    if d2 < 0 or d2 >= 2 * (ctx.N - 2):
        raise NoSuchElement(f"depth {d2}/2 not representable at precision {ctx.N}")

    def unit(k):
        while True:
            u = rng.randrange(1, p**k)
            if u % p:
                return u

    if cls.is_split:
        if d2 % 2:
            raise NoSuchElement("split depths are integers")
        if d2 == 0:
            while True:
                u = unit(ctx.N)
                if u % p != 1:
                    return TorusElement(cls, ctx.scalar(u))
        return TorusElement(cls, ctx.scalar(1 + p ** (d2 // 2) * unit(ctx.N)))
    th = cls.label
    if d2 == 0:
        if th.ramified:
            inner = random_element(ctx, cls, 2 * rng.randrange(0, max(1, ctx.N - 3)) + 1, rng.randrange(1 << 30))
            return -inner
        a, b = _kernels.norm_one_residues(p, ctx.eps, 1)
        choices = [(ai, bi) for ai, bi in zip(a.tolist(), b.tolist()) if bi != 0 and ai != 1]
        ai, bi = choices[rng.randrange(len(choices))]
        # perturb a by a random multiple of p and re-solve for b
        e = NormOneElement.from_a_residue(ctx, th, ai + p * rng.randrange(p ** (ctx.N - 1)))
        if e.x.b.residue(1) != bi:
            e = NormOneElement(QuadExtScalar(th, e.x.a, -e.x.b))
        return TorusElement(cls, e.x)
    if (d2 - th.v2) % 2:
        raise NoSuchElement(f"class {cls} has no elements of depth {d2}/2")
    m = (d2 - th.v2) // 2
    b = p**m * unit(ctx.N)
    return TorusElement(cls, NormOneElement.from_b(ctx, th, b).x)


def random_regular(ctx: FieldContext, cls: TorusClass, rng: random.Random, max_d2: int) -> TorusElement:
    """Sample a regular element of ``cls`` with d_plus at most max_d2 (split may be non-compact)."""
    p = ctx.p
    if cls.is_split:
        kind = rng.randrange(4)
        if kind == 0:
            m = rng.randrange(1, 3) * rng.choice((1, -1))
            u = rng.randrange(1, p**ctx.N)
            while u % p == 0:
                u = rng.randrange(1, p**ctx.N)
            return TorusElement(cls, ctx.scalar(u) * ctx.scalar(Fraction(p) ** m))
        d2 = 2 * rng.randrange(0, max_d2 // 2 + 1)
    elif cls.ramified:
        d2 = 2 * rng.randrange(0, (max_d2 + 1) // 2) + 1
    else:
        d2 = 2 * rng.randrange(0, max_d2 // 2 + 1)
    g = random_element(ctx, cls, d2, rng.randrange(1 << 30))
    return -g if rng.randrange(2) else g
