"""Quasi-characters of k^1_theta, supercuspidal parameters of SL(2), and
the magnitude of their trace characters on torus elements.

Depths are in half-units throughout: ``R = 2r``.  A character of depth r
factors through Q_R = k^1_theta / (k^1_theta)_{r+}, a finite cyclic group that
is built either from its multiplication table (small R) or from the orbit of
a known generator (large R).
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .abelian import decompose, table_mul
from .errors import DomainError, PrecisionLoss, UndefinedForZero
from .exact import Surd
from .padic import FieldContext, PadicScalar, QuadExtScalar, ThetaLabel, legendre
from .tori import (
    NormOneElement,
    TorusClass,
    TorusElement,
    canonical_element,
    enumerate_norm_one,
    key_moduli,
    quotient_order,
)

TABLE_LIMIT = 3000


# --- the groups Q_R ---------------------------------------------------------


@dataclass(eq=False)
class QuotientGroup:
    """Q_R with elements indexed 0..n-1 in increasing key order."""

    ctx: FieldContext
    theta: ThetaLabel
    R: int
    a: np.ndarray
    b: np.ndarray
    invariants: list[int]
    coords: np.ndarray
    generators: list[int]
    method: str
    ka: int = field(init=False)
    kb: int = field(init=False)

    def __post_init__(self):
        self.ka, self.kb = key_moduli(self.theta, self.R)
        self.codes = self.a * self.mb + self.b
        self.identity = self.index_of(1 % self.ma, 0)

    @property
    def ma(self) -> int:
        return self.ctx.p**self.ka

    @property
    def mb(self) -> int:
        return self.ctx.p**self.kb

    @property
    def n(self) -> int:
        return int(self.a.size)

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def index_of(self, a, b):
        code = np.asarray(a, dtype=np.int64) % self.ma * self.mb + np.asarray(b, dtype=np.int64) % self.mb
        idx = np.searchsorted(self.codes, code)
        idx_c = np.minimum(idx, self.n - 1)
        if np.any(self.codes[idx_c] != code):
            raise DomainError("key is not the reduction of a norm-one element")
        return idx_c if np.ndim(idx_c) else int(idx_c)

    def mul(self, i, j):
        a, b = _kernels.key_mul(self.a[i], self.b[i], self.a[j], self.b[j],
                                self.ctx.theta_int(self.theta), self.ma, self.mb)
        return self.index_of(a, b)

    def inverse(self, i):
        return self.index_of(self.a[i], -self.b[i])

    def project(self, x) -> int:
        """Index of the coset of a norm-one element (TorusElement, NormOneElement or QuadExtScalar)."""
        if isinstance(x, TorusElement):
            x = x.lam
        if isinstance(x, NormOneElement):
            x = x.x
        if not isinstance(x, QuadExtScalar) or x.theta is not self.theta:
            raise DomainError(f"cannot project onto Q_R for theta={self.theta.value}")
        return self.index_of(x.a.residue(self.ka), x.b.residue(self.kb))

    @property
    def shell_mask(self) -> np.ndarray:
        """Image of (k^1)_r: a = 1 mod p^ceil(R/2) and b = 0 mod p^ceil((R - v(theta))/2)."""
        p = self.ctx.p
        ca = -(-self.R // 2)
        cb = max(0, -(-(self.R - self.theta.v2) // 2))
        return ((self.a - 1) % p**ca == 0) & (self.b % p**cb == 0)

    def shell_lifts(self) -> list[int]:
        """Indices of x_X (b = p^m X, a = 1 mod p) for X in F_q, R = 2m+1."""
        if getattr(self, "_shell_lifts", None) is None:
            p, m = self.ctx.p, (self.R - 1) // 2
            self._shell_lifts = [self.project(NormOneElement.from_b(self.ctx, self.theta, p**m * X))
                                 for X in range(p)]
        return self._shell_lifts

    def phase_numerators(self, m) -> np.ndarray:
        """For exponent vector m, the values phi(x) = exp(2 pi i t / L) as integers t mod L."""
        L = self.exponent
        w = np.array([mi * (L // d) for mi, d in zip(m, self.invariants)], dtype=np.int64)
        if not self.invariants:
            return np.zeros(self.n, dtype=np.int64)
        return (self.coords @ w) % L


def _cyclic_generator(ctx: FieldContext, theta: ThetaLabel, R: int, n: int):
    """A generator of Q_R, checked by its orbit having n distinct keys."""
    ka, kb = key_moduli(theta, R)
    ma, mb = ctx.p**ka, ctx.p**kb
    t = ctx.theta_int(theta)
    if theta.ramified:
        bases = [-NormOneElement.from_b(ctx, theta, 1).x]
        step = NormOneElement.from_b(ctx, theta, ctx.p).x
    else:
        a0, b0 = _kernels.norm_one_residues(ctx.p, ctx.eps, 1)
        bases = []
        for ai, bi in zip(a0.tolist(), b0.tolist()):
            if bi == 0:
                continue
            # residue of order q+1 in the cyclic group of order q+1
            A, B = _kernels.cyclic_orbit(ai, bi, t, ctx.p + 1, ctx.p, ctx.p)
            if len(set(zip(A.tolist(), B.tolist()))) == ctx.p + 1:
                e = NormOneElement.from_a_residue(ctx, theta, ai)
                bases.append(e.x)
                break
        depth1 = NormOneElement.from_b(ctx, theta, ctx.p).x
        bases = [bases[0] * depth1, bases[0] * depth1 * depth1]
        step = depth1
    for g in bases:
        for _ in range(4):
            A, B = _kernels.cyclic_orbit(g.a.residue(ka), g.b.residue(kb), t, n, ma, mb)
            codes = A * mb + B
            if np.unique(codes).size == n:
                return A, B
            g = g * step
    raise RuntimeError("no generator found")  # not reachable for p >= 5


@lru_cache(maxsize=256)
def quotient_group(ctx: FieldContext, theta: ThetaLabel, R: int, method: str = "auto") -> QuotientGroup:
    """Q_R = k^1_theta / (k^1_theta)_{R/2+} with an invariant-factor presentation."""
    if R < 0:
        raise DomainError("depth must be nonnegative")
    n = quotient_order(ctx.q, theta, R)
    if method == "auto":
        method = "table" if n <= TABLE_LIMIT else "cyclic"
    ka, kb = key_moduli(theta, R)
    ma, mb = ctx.p**ka, ctx.p**kb
    if method == "table":
        a, b = enumerate_norm_one(ctx, theta, R)
        codes = a * mb + b
        table = _kernels.mul_table(a, b, codes, ctx.theta_int(theta), ma, mb)
        ident = int(np.searchsorted(codes, 1 % ma * mb))
        dec = decompose(a.size, ident, table_mul(table))
        return QuotientGroup(ctx, theta, R, a, b, dec.invariants, dec.coords, dec.generators, "table")
    if method == "cyclic":
        if ka + 2 > ctx.N:
            raise PrecisionLoss(f"depth {R}/2 needs precision > {ka + 1}, have N={ctx.N}")
        A, B = _cyclic_generator(ctx, theta, R, n)
        codes = A * mb + B
        order = np.argsort(codes)
        # the element at sorted position k is g^order[k]
        coords = order.astype(np.int64).reshape(n, 1)
        gen = int(np.searchsorted(codes[order], codes[1]))
        return QuotientGroup(ctx, theta, R, A[order], B[order], [n], coords, [gen], "cyclic")
    raise DomainError(f"unknown method {method!r}")


# --- quasi-characters ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuasiCharacter:
    """phi(prod g_i^y_i) = exp(2 pi i sum y_i m_i / d_i) on Q_R."""

    group: QuotientGroup
    m: tuple[int, ...]

    @property
    def theta(self) -> ThetaLabel:
        return self.group.theta

    @property
    def R(self) -> int:
        return self.group.R

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(mi, d) for mi, d in zip(self.m, self.group.invariants))

    def phase(self, idx: int) -> Fraction:
        """phi(x) = exp(2 pi i * phase), phase in [0, 1)."""
        y = self.group.coords[idx]
        return sum((Fraction(int(yi) * mi, d) for yi, mi, d in zip(y, self.m, self.group.invariants)), Fraction(0)) % 1

    def value(self, idx: int) -> complex:
        return cmath.exp(2j * math.pi * self.phase(idx))

    def __call__(self, x) -> complex:
        return self.value(self.group.project(x))

    def inverse(self) -> "QuasiCharacter":
        return QuasiCharacter(self.group, tuple((-mi) % d for mi, d in zip(self.m, self.group.invariants)))

    def square(self) -> "QuasiCharacter":
        return QuasiCharacter(self.group, tuple((2 * mi) % d for mi, d in zip(self.m, self.group.invariants)))

    @property
    def is_trivial(self) -> bool:
        return not any(self.m)

    @property
    def order(self) -> int:
        o = 1
        for mi, d in zip(self.m, self.group.invariants):
            o = math.lcm(o, d // math.gcd(mi, d))
        return o

    @property
    def is_exact_depth(self) -> bool:
        S = np.nonzero(self.group.shell_mask)[0]
        return bool(np.any(self.group.phase_numerators(self.m)[S]))

    def _key(self):
        return (self.group.ctx, self.theta, self.R, self.m)

    def __eq__(self, other):
        return isinstance(other, QuasiCharacter) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        ex = ",".join(str(e) for e in self.exponents)
        return f"QuasiCharacter({self.theta.value}, R={self.R}, [{ex}])"


def enumerate_characters(ctx: FieldContext, theta: ThetaLabel, R: int, exact_depth: bool = False,
                         method: str = "auto") -> list[QuasiCharacter]:
    G = quotient_group(ctx, theta, R, method)
    ms = np.array(list(itertools.product(*(range(d) for d in G.invariants))), dtype=np.int64)
    ms = ms.reshape(-1, len(G.invariants))
    if exact_depth:
        L = G.exponent
        w = ms * np.array([L // d for d in G.invariants], dtype=np.int64)
        S = np.nonzero(G.shell_mask)[0]
        nontrivial = ((G.coords[S] @ w.T) % L != 0).any(axis=0) if S.size else np.zeros(len(ms), bool)
        ms = ms[nontrivial]
    return [QuasiCharacter(G, tuple(int(v) for v in row)) for row in ms]


def quadratic_character(ctx: FieldContext) -> QuasiCharacter:
    """phi_eps: the unique nontrivial character of k^1_eps of order 2 (it has depth 0)."""
    chars = [c for c in enumerate_characters(ctx, ThetaLabel.EPS, 0) if c.order == 2]
    if len(chars) != 1:
        raise AssertionError("expected exactly one quadratic character")
    return chars[0]


# --- parameters -----------------------------------------------------------------

UNRAMIFIED, RAMIFIED, EXCEPTIONAL = "unramified", "ramified", "exceptional"


@dataclass(frozen=True, eq=False)
class SupercuspidalParameter:
    cls: TorusClass
    phi: QuasiCharacter
    sign: str
    kind: str

    def __post_init__(self):
        if self.cls.is_split:
            raise DomainError("supercuspidal parameters live on elliptic tori")
        if self.phi.theta is not self.cls.label:
            raise DomainError("character and torus class disagree on theta")
        if self.sign not in "+-" or len(self.sign) != 1:
            raise DomainError("sign must be '+' or '-'")
        exceptional = self.R == 0 and not self.cls.ramified and self.phi.order == 2
        if exceptional != (self.kind == EXCEPTIONAL):
            raise DomainError("kind 'exceptional' iff depth 0, unramified, phi of order 2")
        if not exceptional:
            want = RAMIFIED if self.cls.ramified else UNRAMIFIED
            if self.kind != want:
                raise DomainError(f"kind must be {want} for class {self.cls}")
            if self.phi.square().is_trivial:
                raise DomainError("ordinary parameters need phi^2 != 1")
            if not self.phi.is_exact_depth:
                raise DomainError("character does not have exact depth")

    @property
    def R(self) -> int:
        return self.phi.R

    @property
    def r(self) -> Fraction:
        return Fraction(self.R, 2)

    @property
    def ctx(self) -> FieldContext:
        return self.phi.group.ctx

    @property
    def label(self) -> str:
        ex = ";".join(str(e) for e in self.phi.exponents)
        return f"{self.cls}|R={self.R}|{ex}|{self.sign}"


def realizable_depths(theta: ThetaLabel, R_max: int) -> list[int]:
    """Depths (half-units) at which k^1_theta has exact-depth characters with phi^2 != 1."""
    if theta.ramified:
        return list(range(1, R_max + 1, 2))
    return list(range(0, R_max + 1, 2))


def enumerate_parameters(ctx: FieldContext, R_max: int, classes=None,
                         include_exceptional: bool = True) -> list[SupercuspidalParameter]:
    """Every supercuspidal parameter of depth <= R_max/2, up to phi ~ phi^-1.

    Ordinary parameters carry sign '+'; the exceptional ones come with both signs.
    """
    from .tori import legal_classes

    classes = legal_classes(ctx) if classes is None else [c for c in classes if not c.is_split]
    out = []
    for cls in classes:
        th = cls.label
        kind = RAMIFIED if th.ramified else UNRAMIFIED
        for R in realizable_depths(th, R_max):
            for phi in enumerate_characters(ctx, th, R, exact_depth=True):
                if phi.square().is_trivial:
                    continue
                if phi.inverse().m < phi.m:
                    continue
                out.append(SupercuspidalParameter(cls, phi, "+", kind))
        if include_exceptional and not th.ramified:
            phi_eps = quadratic_character(ctx)
            for s in "+-":
                out.append(SupercuspidalParameter(cls, phi_eps, s, EXCEPTIONAL))
    return out


def sl2o_volume(q: int) -> Surd:
    """vol(SL(2, O)) = (q^2 - 1) / q^(1/2) in the measure used for formal degrees."""
    return Surd.qpow(-1, q, q * q - 1)


def formal_degree_value(kind: str, q: int, R: int) -> Surd:
    if kind == UNRAMIFIED:
        return Surd.qpow(R, q)
    if kind == RAMIFIED:
        return Surd.qpow(R - 1, q, Fraction(q + 1, 2))
    if kind == EXCEPTIONAL:
        return Surd.rational(Fraction(1, 2), q)
    raise DomainError(f"unknown kind {kind!r}")


def formal_degree(param: SupercuspidalParameter) -> Surd:
    return formal_degree_value(param.kind, param.ctx.q, param.R)


# --- character magnitudes ----------------------------------------------------------


@dataclass(frozen=True)
class CharacterValue:
    """D(gamma)^(1/2) |Theta_pi(gamma)|, exact or as a certified upper bound."""

    kind: str               # exact | upper_bound | zero
    normalized: float
    D_half: Surd
    case: str
    exact: Surd | None = None
    branches: tuple[float, ...] = ()
    source: str = ""

    @property
    def raw(self) -> float:
        return self.normalized / float(self.D_half)


def _zero(D_half, case="vanishes"):
    return CharacterValue("zero", 0.0, D_half, case, Surd.rational(0, D_half.q))


def _exact(D_half, case, val: Surd):
    return CharacterValue("exact", float(val), D_half, case, val)


def _bound(D_half, case, val: Surd | float, source="table"):
    exact = val if isinstance(val, Surd) else None
    return CharacterValue("upper_bound", float(val), D_half, case, exact, source=source)


def _normalize_center(g: TorusElement) -> TorusElement:
    return g if g.depth.d2 >= g.depth.d_minus2 else -g


def character_abs(param: SupercuspidalParameter, g: TorusElement) -> CharacterValue:
    ctx = param.ctx
    if g.ctx != ctx:
        raise DomainError("parameter and element live over different fields")
    q, R = ctx.q, param.R
    dp = g.depth.d_plus2
    Dh = Surd.qpow(-dp, q)
    deg = formal_degree(param)
    tail = deg * Dh
    own_class = g.cls == param.cls
    same_theta = not g.is_split and g.cls.label is param.cls.label

    if param.kind == EXCEPTIONAL:
        if (own_class and dp == 0) or dp > 0:
            return _bound(Dh, "exceptional-support", (1 + Dh) * Fraction(1, 2))
        return _zero(Dh)

    if param.kind == UNRAMIFIED:
        if own_class and dp <= R:
            G = param.phi.group
            i = G.project(g)
            v = abs(param.phi.value(i) + param.phi.value(G.inverse(i)))
            return CharacterValue("exact", v, Dh, "torus")
        if dp > R:
            if same_theta:
                hi, lo = 1 + tail, 1 - tail
                return CharacterValue("exact", float(hi), Dh, "torus-deep", hi, (float(hi), float(lo)))
            if g.is_split:
                return _exact(Dh, "split-deep", 1 - tail)
            return _exact(Dh, "generic-deep", tail)
        return _zero(Dh)

    # ramified
    if same_theta and dp < R:
        return _bound(Dh, "torus", Surd.rational(2, q))
    if same_theta and dp == R:
        if param.cls.label is ThetaLabel.PI:
            A = ramified_exp_sum(param.phi, g)
            return _bound(Dh, "shell", 1 + abs(A), source="exp_sum")
        return _bound(Dh, "shell", Surd.rational(1, q))
    if dp > R:
        if same_theta or g.is_split:
            return _bound(Dh, "torus-deep", 1 + tail)
        return _bound(Dh, "generic-deep", tail)
    return _zero(Dh)


def conjecture_ratio(param: SupercuspidalParameter, g: TorusElement) -> tuple[float, str]:
    """|Theta_pi(gamma)| / deg(pi), with the kind of the underlying value."""
    cv = character_abs(param, g)
    if cv.kind == "zero":
        return 0.0, "zero"
    deg = formal_degree(param)
    if cv.exact is not None:
        return float(cv.exact / cv.D_half / deg), cv.kind
    return cv.raw / float(deg), cv.kind


def family_max_ratio(ctx: FieldContext, g: TorusElement, R: int) -> tuple[float, int]:
    """Max of |Theta_pi(g)|/deg(pi) over ordinary parameters of depth R/2 on g's own class.

    The torus case is vectorized over all characters of the cyclic group Q_R;
    other cases do not depend on phi.  Returns (ratio, number of parameters).
    """
    cls = g.cls
    th = cls.label
    G = quotient_group(ctx, th, R, "cyclic")
    n = G.n
    m = np.arange(n, dtype=np.int64)
    s = int(G.shell_mask.sum())
    admissible = (m % s != 0) & ((2 * m) % n != 0)
    count = int(admissible.sum())
    if count == 0:
        return 0.0, 0
    dp = g.depth.d_plus2
    kind = RAMIFIED if th.ramified else UNRAMIFIED
    deg = float(formal_degree_value(kind, ctx.q, R))
    if kind == UNRAMIFIED and dp <= R:
        j = int(G.coords[G.project(g), 0])
        vals = np.abs(2 * np.cos(2 * np.pi * (m[admissible] * j % n) / n))
        return float(vals.max()) * ctx.q ** (dp / 2) / deg, count
    phi = QuasiCharacter(G, (int(m[admissible][0]),))
    p = SupercuspidalParameter(cls, phi, "+", kind)
    return conjecture_ratio(p, g)[0], count


def degree_sandwich(param: SupercuspidalParameter) -> tuple[float, float, float, bool]:
    """log_q bounds q^(2(s-1)) <= deg' <= q^(3+3s), s = r/2, for deg' normalized by vol(G_x/Z) = 1.

    x is a vertex for unramified and exceptional parameters and the Iwahori
    point for ramified ones.
    """
    q = param.ctx.q
    vol = sl2o_volume(q) if param.kind != RAMIFIED else Surd.qpow(-1, q, q - 1)
    d = float(formal_degree(param) * vol)
    s = param.R / 4
    lo, hi = 2 * (s - 1), 3 + 3 * s
    ld = math.log(d, q)
    return lo, ld, hi, lo - 1e-12 <= ld <= hi + 1e-12


# --- Gauss sums, sgn_theta, the ramified exponential sum -------------------------


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    fac = [f for f in range(2, p) if (p - 1) % f == 0 and all(f % k for k in range(2, int(f**0.5) + 1))]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fac):
            return g
    raise DomainError(f"{p} is not prime")


def gauss_sum(q: int, chi_exp: int, psi_exp: int) -> complex:
    """Sum over x in F_q^x of chi(x) psi(x).

    chi(g^k) = exp(2 pi i chi_exp k / (q-1)) for the least primitive root g;
    psi(x) = exp(2 pi i psi_exp x / q).
    """
    g = primitive_root(q)
    total = 0j
    x = 1
    for k in range(q - 1):
        total += cmath.exp(2j * math.pi * (chi_exp * k / (q - 1) + psi_exp * x / q))
        x = x * g % q
    return total


def sgn_theta(ctx: FieldContext, theta: ThetaLabel, x: PadicScalar) -> int:
    """+1 iff x is a norm from k_theta^x."""
    x = PadicScalar.from_rational(ctx, x)
    if x.is_exact_zero:
        raise UndefinedForZero("sgn_theta(0)")
    v = x.valuation()
    u = x.unit % ctx.p
    if theta is ThetaLabel.EPS:
        return -1 if v % 2 else 1
    s = legendre(u, ctx.p) * (-1) ** (v * (ctx.p - 1) // 2)
    if theta is ThetaLabel.EPS_PI and v % 2:
        s = -s
    return s


def sgn_theta_bruteforce(ctx: FieldContext, theta: ThetaLabel, x: PadicScalar) -> int:
    """Norm membership by search: x is a norm iff a^2 - theta*b^2 = x mod p^(v+1) is solvable."""
    x = PadicScalar.from_rational(ctx, x)
    if x.is_exact_zero:
        raise UndefinedForZero("sgn_theta(0)")
    v = x.valuation()
    shift = 0
    if v < 0:
        shift = (-v + 1) // 2 * 2   # scale by a square p^shift
    v += shift
    mod = ctx.p ** (v + 1)
    target = x.unit * ctx.p**v % mod
    t = ctx.theta_int(theta) % mod
    a = np.arange(mod, dtype=np.int64)
    sq = a * a % mod
    need = (target + t * sq) % mod
    return 1 if np.isin(need, sq).any() else -1


def _shell_Y(phi: QuasiCharacter, g: TorusElement) -> int:
    G = phi.group
    th, R = G.theta, G.R
    if not th.ramified or R % 2 == 0:
        raise DomainError("the exponential sum is defined for ramified characters of half-odd depth")
    if not phi.is_exact_depth:
        raise DomainError("character is trivial on the shell (depth not exact)")
    if g.is_split or g.cls.label is not th:
        raise DomainError("element is not in the ramified torus of the character")
    if g.depth.d_plus2 != R:
        raise DomainError("element is not in the depth-r shell")
    m = (R - 1) // 2
    p = g.ctx.p
    z = _normalize_center(g)
    return (z.lam.b.residue(m + 1) // p**m) % p


def ramified_exp_sum(phi: QuasiCharacter, g: TorusElement, legendre_fn=legendre) -> complex:
    """A = (2 sqrt q)^-1 sum_{X != Y} chi(X - Y) phi(x_X) on the shell (k^1)_{r:r+}.

    x_X is the norm-one element with b = p^m X (R = 2m+1) and a = 1 mod p, and
    the shell element gamma (moved by the center to depth d_plus) has
    b = p^m Y mod p^(m+1).  chi is the Legendre symbol, the residue-field
    reduction of sgn_theta(tr(gamma - x)).
    """
    Y = _shell_Y(phi, g)
    p = phi.group.ctx.p
    lifts = phi.group.shell_lifts()
    total = 0j
    for X in range(p):
        if X == Y:
            continue
        total += legendre_fn((X - Y) % p, p) * phi.value(lifts[X])
    return total / (2 * math.sqrt(p))


def ramified_exp_sum_bruteforce(phi: QuasiCharacter, g: TorusElement) -> complex:
    """Same sum, read off the group elements of Q_R lying in the shell image."""
    Y = _shell_Y(phi, g)
    G = phi.group
    p = G.ctx.p
    m = (G.R - 1) // 2
    L = G.exponent
    nums = G.phase_numerators(phi.m)
    total = 0j
    for idx in np.nonzero(G.shell_mask)[0]:
        X = int(G.b[idx]) // p**m % p
        if X == Y:
            continue
        chi = legendre((X - Y) % p, p)
        total += chi * cmath.exp(2j * math.pi * int(nums[idx]) / L)
    return total / (2 * math.sqrt(p))


def shell_elements(ctx: FieldContext, cls: TorusClass, R: int) -> list[TorusElement]:
    """One element per nonzero Y of the depth-R/2 shell, plus their negatives."""
    th = cls.label
    m = (R - 1) // 2
    out = []
    for Y in range(1, ctx.p):
        x = NormOneElement.from_b(ctx, th, ctx.p**m * Y).x
        out.append(TorusElement(cls, x, f"shell[{R},{Y}]"))
        out.append(TorusElement(cls, -x, f"-shell[{R},{Y}]"))
    return out


__all__ = [
    "QuotientGroup", "quotient_group", "QuasiCharacter", "enumerate_characters", "quadratic_character",
    "SupercuspidalParameter", "enumerate_parameters", "formal_degree", "formal_degree_value",
    "sl2o_volume", "CharacterValue", "character_abs", "conjecture_ratio", "family_max_ratio",
    "degree_sandwich", "gauss_sum", "sgn_theta", "sgn_theta_bruteforce", "ramified_exp_sum",
    "ramified_exp_sum_bruteforce", "shell_elements", "canonical_element", "UNRAMIFIED", "RAMIFIED",
    "EXCEPTIONAL",
]
