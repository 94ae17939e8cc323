"""Finite abelian groups given by a vectorized multiplication on element indices.

``decompose`` picks generators greedily (largest element order first), records
the relation each new generator satisfies against the subgroup built so far,
and reduces the relation matrix to Smith normal form.  The diagonal gives the
invariant factors, and the column transform gives coordinates of every element
in the new basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


def smith_normal_form(M):
    """Return (diag, U, V) with U @ M @ V == diag(diag) and U, V unimodular.

    ``M`` is a list of integer rows.  Diagonal entries are nonnegative and each
    divides the next.
    """
    A = [list(map(int, row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(r, c)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, r) for j in range(t, c) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, r):
                f = A[i][t] // A[t][t]
                if f:
                    add_row(i, t, -f)
                if A[i][t]:
                    clean = False
            for j in range(t + 1, c):
                f = A[t][j] // A[t][t]
                if f:
                    add_col(j, t, -f)
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = [i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % A[t][t]]
            if bad:
                add_row(t, bad[0], 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    diag = [A[i][i] for i in range(min(r, c))]
    return diag, U, V


@dataclass
class AbelianDecomposition:
    invariants: list[int]        # d_1 | d_2 | ... , all > 1
    generators: list[int]        # element index of each generator
    coords: np.ndarray           # (n, len(invariants)) exponent vector of each element
    relations: list[list[int]]   # relation matrix before reduction

    @property
    def order(self) -> int:
        return int(np.prod(self.invariants)) if self.invariants else 1


def _pow_var(x: np.ndarray, e: np.ndarray, identity: int, mul) -> np.ndarray:
    res = np.full(x.shape, identity, dtype=np.int64)
    base = x.astype(np.int64).copy()
    e = e.astype(np.int64).copy()
    while np.any(e):
        odd = (e & 1).astype(bool)
        if odd.any():
            res[odd] = mul(res[odd], base[odd])
        base = mul(base, base)
        e >>= 1
    return res


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def element_orders(n: int, identity: int, mul) -> np.ndarray:
    idx = np.arange(n, dtype=np.int64)
    order = np.full(n, n, dtype=np.int64)
    for ell in _prime_factors(n):
        while True:
            cand = np.nonzero(order % ell == 0)[0]
            if cand.size == 0:
                break
            y = _pow_var(idx[cand], order[cand] // ell, identity, mul)
            shrink = cand[y == identity]
            if shrink.size == 0:
                break
            order[shrink] //= ell
    return order


def _powers(g: int, count: int, identity: int, mul) -> np.ndarray:
    P = np.array([identity, g], dtype=np.int64)
    while P.size < count:
        step = mul(np.array([P[-1]]), np.array([g]))[0]  # g**len(P)
        P = np.concatenate([P, mul(P, np.full(P.size, step, dtype=np.int64))])
    return P[:count]


def decompose(n: int, identity: int, mul: Callable) -> AbelianDecomposition:
    """Decompose the abelian group on indices 0..n-1 with the given multiplication."""
    orders = element_orders(n, identity, mul)
    candidates = np.lexsort((np.arange(n), -orders))
    in_H = np.zeros(n, dtype=bool)
    in_H[identity] = True
    coords = np.zeros((n, 0), dtype=np.int64)
    gens: list[int] = []
    rel_rows: list[list[int]] = []
    for g in candidates:
        if in_H.all():
            break
        g = int(g)
        if in_H[g]:
            continue
        P = _powers(g, int(orders[g]) + 1, identity, mul)
        m = int(np.argmax(in_H[P[1:]])) + 1
        back = coords[P[m]]
        rel_rows.append([-int(v) for v in back] + [m])
        H = np.nonzero(in_H)[0]
        js = np.arange(1, m)
        if js.size:
            hh = np.repeat(H, js.size)
            pp = np.tile(P[js], H.size)
            new = mul(hh, pp)
            new_coords = np.concatenate(
                [coords[hh], np.tile(js, H.size)[:, None]], axis=1
            )
        coords = np.concatenate([coords, np.zeros((n, 1), dtype=np.int64)], axis=1)
        if js.size:
            coords[new] = new_coords
            in_H[new] = True
        gens.append(g)
    k = len(gens)
    R = [row + [0] * (k - len(row)) for row in rel_rows]
    diag, _, V = smith_normal_form(R) if k else ([], [], [])
    Vm = np.array(V, dtype=object).reshape(k, k) if k else np.zeros((0, 0), dtype=object)
    new = (coords.astype(object) @ Vm) if k else coords
    keep = [i for i, d in enumerate(diag) if d > 1]
    invariants = [int(diag[i]) for i in keep]
    y = np.zeros((n, len(keep)), dtype=np.int64)
    for c, i in enumerate(keep):
        y[:, c] = np.array([int(v) % diag[i] for v in new[:, i]], dtype=np.int64)
    generators = []
    for c in range(len(keep)):
        target = np.zeros(len(keep), dtype=np.int64)
        target[c] = 1
        generators.append(int(np.nonzero((y == target).all(axis=1))[0][0]))
    return AbelianDecomposition(invariants, generators, y, R)


def table_mul(table: np.ndarray):
    """Wrap a multiplication table as a vectorized multiplication."""
    def mul(i, j):
        return table[np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64)].astype(np.int64)
    return mul
