import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sl2char.abelian import decompose, smith_normal_form, table_mul


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_snf_example():
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    diag, U, V = smith_normal_form(M)
    assert diag == [2, 6, 12]
    D = _matmul(_matmul(U, M), V)
    assert D == [[2, 0, 0], [0, 6, 0], [0, 0, 12]]


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_properties(M):
    diag, U, V = smith_normal_form(M)
    D = _matmul(_matmul(U, M), V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j else 0)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert round(abs(np.linalg.det(np.array(U, float)))) == 1
    assert round(abs(np.linalg.det(np.array(V, float)))) == 1


def _product_group(mods):
    elems = list(itertools.product(*[range(m) for m in mods]))
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            table[i, j] = index[tuple((a + b) % m for a, b, m in zip(x, y, mods))]
    return n, index[tuple(0 for _ in mods)], table


@pytest.mark.parametrize("mods,inv", [
    ((4, 6), [2, 12]), ((6,), [6]), ((2, 2, 3), [2, 6]), ((5, 5), [5, 5]), ((8, 4, 2), [2, 4, 8]),
])
def test_decompose_invariants(mods, inv):
    n, e, table = _product_group(mods)
    dec = decompose(n, e, table_mul(table))
    assert dec.invariants == inv
    assert dec.order == n
    # coordinates are a bijection onto Z/d1 x ... x Z/dk and a homomorphism
    assert len({tuple(r) for r in dec.coords}) == n
    d = np.array(dec.invariants)
    rng = np.random.default_rng(1)
    for i, j in rng.integers(0, n, size=(100, 2)):
        assert np.array_equal((dec.coords[i] + dec.coords[j]) % d, dec.coords[table[i, j]])
    for c, g in enumerate(dec.generators):
        assert dec.coords[g][c] == 1 and dec.coords[g].sum() == 1


def test_trivial_group():
    dec = decompose(1, 0, table_mul(np.zeros((1, 1), dtype=np.int64)))
    assert dec.invariants == [] and dec.order == 1
