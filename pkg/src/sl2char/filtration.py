"""Moy-Prasad index bookkeeping on the standard apartment of a split group.

Every index between filtration lattices g_{x,a} is a power of q whose exponent
counts affine roots alpha + n with a <= alpha(x) + n < b, plus rank copies of
each integer step for the torus.  Nothing else of the building is modelled.

Endpoints may be "plussed": ``a_plus`` turns a <= v into a < v and ``b_plus``
turns v < b into v <= b, which encodes the r versus r+ distinction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .rootdata import LeviDescriptor, RootSystem, height_of_phi, levi_roots


@dataclass(frozen=True)
class ApartmentPoint:
    """x given by the values alpha_j(x) on the simple roots."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def value(self, root) -> Fraction:
        return sum((c * x for c, x in zip(root, self.coords)), Fraction(0))


@dataclass(frozen=True)
class IndexExponent:
    """[lattice_a : lattice_b] = q^e."""

    e: int


def all_roots(rs: RootSystem) -> list[tuple[int, ...]]:
    pos = list(rs.positive_roots)
    return pos + [tuple(-c for c in a) for a in pos]


def highest_root(rs: RootSystem) -> tuple[int, ...]:
    h = height_of_phi(rs)
    return next(a for a in rs.positive_roots if sum(a) == h)


def vertices(rs: RootSystem) -> list[ApartmentPoint]:
    """Vertices of the base alcove: the origin and omega_i^vee / m_i."""
    m = highest_root(rs)
    out = [ApartmentPoint((0,) * rs.rank)]
    for i in range(rs.rank):
        out.append(ApartmentPoint(tuple(Fraction(int(i == j), m[i]) for j in range(rs.rank))))
    return out


def barycenter(rs: RootSystem) -> ApartmentPoint:
    vs = vertices(rs)
    k = len(vs)
    return ApartmentPoint(tuple(sum(v.coords[j] for v in vs) / k for j in range(rs.rank)))


def reflect_point(rs: RootSystem, x: ApartmentPoint, i: int) -> ApartmentPoint:
    """s_i(x) = x - alpha_i(x) alpha_i^vee."""
    xi = x.coords[i]
    return ApartmentPoint(tuple(x.coords[j] - xi * rs.cartan[i][j] for j in range(rs.rank)))


def integers_in(t, a, b, a_plus: bool = False, b_plus: bool = False) -> int:
    """#{n in Z : a <= t + n < b}, with the plus flags making either end strict/inclusive."""
    lo = math.floor(a - t) + 1 if a_plus else math.ceil(a - t)
    hi = math.floor(b - t) if b_plus else math.ceil(b - t) - 1
    return max(0, hi - lo + 1)


def affine_count(rs: RootSystem, x: ApartmentPoint, a, b, root_subset=None,
                 a_plus: bool = False, b_plus: bool = False) -> int:
    """#{(alpha, n) : alpha in root_subset, a <= alpha(x) + n < b}."""
    a, b = Fraction(a), Fraction(b)
    roots = all_roots(rs) if root_subset is None else root_subset
    return sum(integers_in(x.value(al), a, b, a_plus, b_plus) for al in roots)


def _check_range(a, b, a_plus, b_plus):
    if Fraction(a) > Fraction(b) or (a == b and a_plus and not b_plus):
        raise DomainError(f"empty or reversed range [{a}, {b})")


def log_index(rs: RootSystem, x: ApartmentPoint, a, b, include_torus: bool = True,
              a_plus: bool = False, b_plus: bool = False) -> IndexExponent:
    """log_q [g_{x,a} : g_{x,b}]."""
    _check_range(a, b, a_plus, b_plus)
    e = affine_count(rs, x, a, b, None, a_plus, b_plus)
    if include_torus:
        e += rs.rank * integers_in(0, Fraction(a), Fraction(b), a_plus, b_plus)
    return IndexExponent(e)


def _levi_subset(levi) -> tuple[int, ...]:
    if isinstance(levi, LeviDescriptor):
        return levi.subset
    return tuple(levi)


def outside_levi(rs: RootSystem, levi) -> list[tuple[int, ...]]:
    """Roots (both signs) not in the Levi subsystem."""
    subset = _levi_subset(levi)
    if any(not (0 <= i < rs.rank) for i in subset):
        raise DomainError(f"malformed Levi {subset} for {rs.label}")
    inside = set(levi_roots(rs, subset))
    inside |= {tuple(-c for c in a) for a in inside}
    return [a for a in all_roots(rs) if a not in inside]


def unipotent_roots(rs: RootSystem, levi) -> list[tuple[int, ...]]:
    """Roots of the unipotent radical N of the standard parabolic with this Levi."""
    out = outside_levi(rs, levi)
    return [a for a in out if all(c >= 0 for c in a)]


def vol_Ls_exponent(rs: RootSystem, levi, x: ApartmentPoint, s) -> IndexExponent:
    """log_q [G_{x,0+} : G'_{x,0+} G_{x,s}] = -log_q vol(L_s) up to the normalization at G_{x,0+}."""
    if Fraction(s) <= 0:
        raise DomainError("s must be positive")
    return IndexExponent(affine_count(rs, x, 0, s, outside_levi(rs, levi), a_plus=True))


@dataclass(frozen=True)
class InequalityReport:
    part: str
    lhs: int        # log_q of the index inside N' (before squaring)
    rhs: int        # log_q of the index in G
    slack: int      # c*dim N + rhs - 2*lhs
    holds: bool


def check_index_inequalities(rs: RootSystem, levi, x: ApartmentPoint, a_prime, a) -> list[InequalityReport]:
    """The three index inequalities, all sides as affine-root counts.

    (i)   [G_{x,a'} n N' : (G'_{x,a'}G_{x,a}) n N']^2 <= q^dimN [G_{x,a'} : G'_{x,a'}G_{x,a}]
    (ii)  the same with G_x over G'_x G_{x,0+}; the reductive-quotient index on
          the right is replaced by q to the number of affine roots outside G'
          with value 0 (its dominant term)
    (iii) [G_x n N' : (G'_x G_{x,a}) n N']^2 <= q^(2 dimN) [G_x : G'_x G_{x,a}]
    """
    a_prime, a = Fraction(a_prime), Fraction(a)
    if not 0 < a_prime <= a:
        raise DomainError("need 0 < a' <= a")
    N = unipotent_roots(rs, levi)
    out_roots = outside_levi(rs, levi)
    dimN = len(N)
    reports = []

    def rep(part, lhs, rhs, c):
        slack = c * dimN + rhs - 2 * lhs
        reports.append(InequalityReport(part, lhs, rhs, slack, slack >= 0))

    rep("i", affine_count(rs, x, a_prime, a, N), affine_count(rs, x, a_prime, a, out_roots), 1)
    rep("ii", affine_count(rs, x, 0, 0, N, b_plus=True), affine_count(rs, x, 0, 0, out_roots, b_plus=True), 1)
    rep("iii", affine_count(rs, x, 0, a, N), affine_count(rs, x, 0, a, out_roots), 2)
    return reports


def decay_exponent(rs: RootSystem, levi, x: ApartmentPoint, s) -> Fraction:
    """log_q of q^(r_G s) vol(L_s)^(1/2) (h_G > 1), or of vol(L_s)^(1/2) alone (h_G = 1)."""
    e = Fraction(-vol_Ls_exponent(rs, levi, x, s).e, 2)
    if height_of_phi(rs) > 1:
        e += rs.rank * Fraction(s)
    return e


GRID = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3))


def sweep_index_inequalities(rs: RootSystem, points=None, grid=GRID, levis=None) -> tuple[list, int]:
    """Run every check over the given points, Levis and (a', a) grid; returns failing cases."""
    from .rootdata import standard_levis

    points = points if points is not None else vertices(rs) + [barycenter(rs)]
    levis = levis if levis is not None else [l.subset for l in standard_levis(rs)]
    failures = []
    count = 0
    for x in points:
        for levi in levis:
            for ap in grid:
                for a in grid:
                    if a < ap:
                        continue
                    for r in check_index_inequalities(rs, levi, x, ap, a):
                        count += 1
                        if not r.holds:
                            failures.append((rs.label, levi, x.coords, ap, a, r))
    return failures, count
