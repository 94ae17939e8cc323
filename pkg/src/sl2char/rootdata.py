"""Root systems from Cartan matrices, and the constants h_G, kappa and A of the
uniform character bound.

Roots are integer tuples in the basis of simple roots.  The Cartan matrix
convention is ``C[i][j] = <alpha_i^vee, alpha_j>``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import DomainError

WEYL_ORDERS = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "G2": 12}


def cartan_matrix(typ: str, n: int) -> list[list[int]]:
    typ = typ.upper()
    valid = {"A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 4,
             "E": n in (6, 7, 8), "F": n == 4, "G": n == 2}
    if typ not in valid or not valid[typ]:
        raise DomainError(f"no root system of type {typ}{n}")
    C = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j], C[j][i] = cij, cji

    if typ in "ABCDF":
        for i in range(n - 1):
            link(i, i + 1)
    if typ == "B":        # alpha_n short
        link(n - 1, n - 2, -2, -1)
    elif typ == "C":      # alpha_n long
        link(n - 1, n - 2, -1, -2)
    elif typ == "D":
        link(n - 2, n - 1, 0, 0)
        link(n - 3, n - 1)
    elif typ == "E":      # Bourbaki: 1-3-4-5-6-7-8 with 2 on 4
        order = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(order, order[1:]):
            link(a, b)
        link(1, 3)
    elif typ == "F":      # alpha_1, alpha_2 long
        link(2, 1, -2, -1)
    elif typ == "G":      # alpha_1 short
        link(0, 1, -3, -1)
    return C


@dataclass(frozen=True)
class RootSystem:
    typ: str
    rank: int
    cartan: tuple = field(repr=False)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Closure by root strings, built height by height."""
        n, C = self.rank, self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = set()
            for beta in layer:
                for i in range(n):
                    pair = sum(beta[j] * C[i][j] for j in range(n))  # <beta, alpha_i^vee>
                    # p = largest k with beta - k alpha_i a root
                    k = 0
                    while True:
                        down = tuple(c - (k + 1) * (j == i) for j, c in enumerate(beta))
                        if down in roots:
                            k += 1
                        else:
                            break
                    if k - pair > 0:
                        nxt.add(tuple(c + (j == i) for j, c in enumerate(beta)))
            nxt -= roots
            roots |= nxt
            layer = sorted(nxt)
        return tuple(sorted(roots, key=lambda r: (sum(r), r)))

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def dim(self) -> int:
        return self.rank + 2 * self.num_positive

    @property
    def label(self) -> str:
        return f"{self.typ}{self.rank}"

    @cached_property
    def weyl_order(self) -> int:
        t, n = self.typ, self.rank
        if t == "A":
            return math.factorial(n + 1)
        if t in "BC":
            return 2**n * math.factorial(n)
        if t == "D":
            return 2 ** (n - 1) * math.factorial(n)
        return WEYL_ORDERS[self.label]

    def exponents(self) -> list[int]:
        """Exponents m_i from the height distribution: #{alpha : ht alpha = k} = #{i : m_i >= k}."""
        h = height_of_phi(self)
        counts = [sum(1 for a in self.positive_roots if sum(a) == k) for k in range(1, h + 1)]
        return sorted(sum(1 for c in counts if c > j) for j in range(self.rank))

    def reflect(self, beta, i):
        pair = sum(beta[j] * self.cartan[i][j] for j in range(self.rank))
        return tuple(c - pair * (j == i) for j, c in enumerate(beta))


@lru_cache(maxsize=None)
def build_root_system(typ: str, rank: int) -> RootSystem:
    typ = typ.upper()
    C = cartan_matrix(typ, rank)
    return RootSystem(typ, rank, tuple(tuple(r) for r in C))


def parse_type(text: str) -> RootSystem:
    text = text.strip().upper().replace("_", "")
    if len(text) < 2 or not text[1:].isdigit():
        raise DomainError(f"cannot parse root system type {text!r}")
    return build_root_system(text[0], int(text[1:]))


def roots_by_weyl_orbit(rs: RootSystem) -> set[tuple[int, ...]]:
    """All roots as the orbit of the simple roots under the simple reflections."""
    seen = set(rs.simple_roots)
    todo = list(seen)
    while todo:
        beta = todo.pop()
        for i in range(rs.rank):
            g = rs.reflect(beta, i)
            if g not in seen:
                seen.add(g)
                todo.append(g)
    return seen


def height_of_phi(rs: RootSystem) -> int:
    return max(sum(a) for a in rs.positive_roots)


# --- Levis and constants ------------------------------------------------------


@dataclass(frozen=True)
class LeviDescriptor:
    subset: tuple[int, ...]     # indices of the simple roots of the Levi
    dim: int
    numerator: int
    excluded: bool = False
    flagged: bool = False
    note: str = ""


def levi_roots(rs: RootSystem, subset) -> list[tuple[int, ...]]:
    """Positive roots supported on ``subset``."""
    s = set(subset)
    return [a for a in rs.positive_roots if all(c == 0 or j in s for j, c in enumerate(a))]


def _is_end_corank_one_in_A(rs: RootSystem, subset) -> bool:
    n = rs.rank
    return rs.typ == "A" and n >= 2 and len(subset) == n - 1 and (0 not in subset or n - 1 not in subset)


def standard_levis(rs: RootSystem) -> list[LeviDescriptor]:
    """Proper standard Levis with their kappa numerators and exclusion flags."""
    h = height_of_phi(rs)
    out = []
    for k in range(rs.rank):
        for subset in itertools.combinations(range(rs.rank), k):
            dim = rs.rank + 2 * len(levi_roots(rs, subset))
            num = rs.dim - dim - (2 * rs.rank if h > 1 else 0)
            excluded = flagged = False
            note = ""
            if h > 1 and _is_end_corank_one_in_A(rs, subset):
                excluded, note = True, f"A{rs.rank - 1} in A{rs.rank}"
            elif num <= 0:
                flagged, note = True, "nonpositive numerator"
            out.append(LeviDescriptor(subset, dim, num, excluded, flagged, note))
    return out


@dataclass(frozen=True)
class BoundConstants:
    h_G: int
    r_G: int
    kappa: Fraction
    A: int
    levis: tuple[LeviDescriptor, ...]

    @property
    def flags(self) -> list[str]:
        return [f"{l.subset}:{l.note}" for l in self.levis if l.excluded or l.flagged]


def kappa(rs: RootSystem, center_dim: int = 0) -> BoundConstants:
    """kappa = min over proper Levis G' of (dim G - dim G' - 2 r_G) / (2 (dim G - dim Z)),
    with the -2 r_G term dropped when h_G = 1.  Excluded and flagged Levis do not
    enter the minimum."""
    levis = standard_levis(rs)
    den = 2 * (rs.dim - center_dim)
    usable = [l.numerator for l in levis if not (l.excluded or l.flagged)]
    if not usable:
        raise DomainError(f"no admissible Levi for {rs.label}")
    return BoundConstants(height_of_phi(rs), rs.rank, Fraction(min(usable), den), exponent_A(rs), tuple(levis))


def exponent_A(rs: RootSystem) -> int:
    h = height_of_phi(rs)
    return rs.rank * h + 1 if h > 1 else rs.rank + 1


def a_gamma_sigma(h_G: int, sd, s) -> Fraction:
    return Fraction(h_G) * Fraction(sd) + Fraction(s) if h_G > 1 else Fraction(sd)


def main_bound_rhs_raw(q: int, weyl_order: int, q_exponent, log_q_D_inv, r, r_G: int,
                       vol_log_q=0, C1=1) -> float:
    """log_q of C1 (#W)^2 q^e D^-1 (r+4)^r_G vol^(1/2), with every ingredient supplied."""
    return (math.log(C1, q) + 2 * math.log(weyl_order, q) + float(q_exponent) + float(log_q_D_inv)
            + r_G * math.log(float(r) + 4, q) + float(vol_log_q) / 2)


def main_bound_rhs(rs: RootSystem, q: int, r, sd, vol_Ls_log_q, C1=1, s=None, log_q_D_inv=None) -> float:
    """log_q of the right-hand side of the main character estimate.

    The q-exponent is dim G + r_G (A_{gamma,Sigma} + 1) with A_{gamma,Sigma}
    from ``a_gamma_sigma``.  Unless given, log_q D(gamma)^-1 is taken as
    #Phi * sd, its value when every root has the singular depth (exact for SL(2)).
    """
    h = height_of_phi(rs)
    s = Fraction(r) / 2 if s is None else s
    ags = a_gamma_sigma(h, sd, s)
    if log_q_D_inv is None:
        log_q_D_inv = 2 * rs.num_positive * Fraction(sd)
    return main_bound_rhs_raw(q, rs.weyl_order, rs.dim + rs.rank * (ags + 1), log_q_D_inv, r, rs.rank,
                              vol_Ls_log_q, C1)


SHIPPED_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2", "F4", "E6", "E7", "E8"]
