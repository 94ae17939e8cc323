"""Integer kernels on residues of k_theta = k(sqrt(theta)).

Elements are handled as pairs (a, b) meaning a + b*sqrt(theta), with ``a``
reduced modulo ``ma`` and ``b`` modulo ``mb``.  The product
``(a*c + theta*b*d, a*d + b*c)`` is well defined on such pairs whenever
``ma`` divides ``theta*mb`` and ``mb`` divides ``ma``; callers guarantee this.

Each kernel has a numba implementation and a pure-numpy one.  Set
``SL2CHAR_NUMBA=0`` in the environment to force the numpy path (numba is also
skipped automatically when it cannot be imported).
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("SL2CHAR_NUMBA", "1").strip().lower()

try:
    if _FLAG in ("0", "off", "false", "no"):
        raise ImportError("numba disabled by SL2CHAR_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA

# int64 headroom: a product of two residues plus theta*b*d must fit.
MAX_MODULUS = 1 << 28


def _check_modulus(m: int) -> None:
    if m > MAX_MODULUS:
        raise OverflowError(f"residue modulus {m} exceeds int64-safe bound {MAX_MODULUS}")


# --- numpy implementations --------------------------------------------------


def key_mul(a1, b1, a2, b2, theta: int, ma: int, mb: int):
    a1 = np.asarray(a1, dtype=np.int64)
    b1 = np.asarray(b1, dtype=np.int64)
    a2 = np.asarray(a2, dtype=np.int64)
    b2 = np.asarray(b2, dtype=np.int64)
    a = (a1 * a2 % ma + theta * (b1 * b2 % ma)) % ma
    b = (a1 % mb * b2 + b1 * (a2 % mb)) % mb
    return a, b


def _norm_one_residues_np(p: int, theta: int, K: int):
    m = p**K
    b = np.arange(m, dtype=np.int64)
    tb2 = theta * (b * b % m) % m
    out_a, out_b = [], []
    for a in range(m):
        hit = (a * a - tb2 - 1) % m == 0
        if hit.any():
            sel = b[hit]
            out_a.append(np.full(sel.size, a, dtype=np.int64))
            out_b.append(sel)
    if not out_a:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(out_a), np.concatenate(out_b)


def _cyclic_orbit_np(a0: int, b0: int, theta: int, n: int, ma: int, mb: int):
    A = np.array([1 % ma], dtype=np.int64)
    B = np.array([0], dtype=np.int64)
    ga, gb = a0 % ma, b0 % mb
    # doubling: [g^0..g^(L-1)] * g^L gives [g^L..g^(2L-1)]
    while A.size < n:
        L = A.size
        pa, pb = 1 % ma, 0
        xa, xb, e = ga, gb, L
        while e:
            if e & 1:
                pa, pb = (pa * xa + theta * pb * xb) % ma, (pa * xb + pb * xa) % mb
            xa, xb = (xa * xa + theta * xb * xb) % ma, (2 * xa * xb) % mb
            e >>= 1
        na, nb = key_mul(A, B, pa, pb, theta, ma, mb)
        A = np.concatenate([A, na])
        B = np.concatenate([B, nb])
    return A[:n], B[:n]


def _mul_table_np(a, b, codes, theta: int, ma: int, mb: int):
    n = a.size
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        pa, pb = key_mul(a[i], b[i], a, b, theta, ma, mb)
        table[i] = np.searchsorted(codes, pa * mb + pb)
    return table


# --- numba implementations --------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _norm_one_residues_nb(p, theta, K):
        m = p**K
        count = 0
        for a in range(m):
            for b in range(m):
                if (a * a - theta * (b * b % m) - 1) % m == 0:
                    count += 1
        out_a = np.empty(count, np.int64)
        out_b = np.empty(count, np.int64)
        i = 0
        for a in range(m):
            for b in range(m):
                if (a * a - theta * (b * b % m) - 1) % m == 0:
                    out_a[i] = a
                    out_b[i] = b
                    i += 1
        return out_a, out_b

    @njit(cache=True)
    def _cyclic_orbit_nb(a0, b0, theta, n, ma, mb):
        A = np.empty(n, np.int64)
        B = np.empty(n, np.int64)
        ca, cb = 1 % ma, 0
        ga, gb = a0 % ma, b0 % mb
        for j in range(n):
            A[j] = ca
            B[j] = cb
            na = (ca * ga % ma + theta * (cb * gb % ma)) % ma
            nb = (ca % mb * gb + cb * (ga % mb)) % mb
            ca, cb = na, nb
        return A, B

    @njit(cache=True)
    def _mul_table_nb(a, b, codes, theta, ma, mb):
        n = a.size
        table = np.empty((n, n), np.int32)
        for i in range(n):
            for j in range(n):
                pa = (a[i] * a[j] % ma + theta * (b[i] * b[j] % ma)) % ma
                pb = (a[i] % mb * b[j] + b[i] * (a[j] % mb)) % mb
                table[i, j] = np.searchsorted(codes, pa * mb + pb)
        return table


IMPLEMENTATIONS = {
    "numpy": {
        "norm_one_residues": _norm_one_residues_np,
        "cyclic_orbit": _cyclic_orbit_np,
        "mul_table": _mul_table_np,
    }
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "norm_one_residues": _norm_one_residues_nb,
        "cyclic_orbit": _cyclic_orbit_nb,
        "mul_table": _mul_table_nb,
    }


def _impl(name: str):
    return IMPLEMENTATIONS["numba" if USE_NUMBA else "numpy"][name]


def norm_one_residues(p: int, theta: int, K: int):
    """All (a, b) modulo p**K with a^2 - theta*b^2 = 1 mod p**K, sorted by (a, b)."""
    _check_modulus(p**K)
    return _impl("norm_one_residues")(p, theta, K)


def cyclic_orbit(a0: int, b0: int, theta: int, n: int, ma: int, mb: int):
    """Residue pairs of g**0, ..., g**(n-1) for g = a0 + b0*sqrt(theta)."""
    _check_modulus(max(ma, mb))
    return _impl("cyclic_orbit")(int(a0), int(b0), int(theta), int(n), int(ma), int(mb))


def mul_table(a, b, codes, theta: int, ma: int, mb: int):
    """table[i, j] = index (into sorted ``codes``) of element i times element j."""
    _check_modulus(max(ma, mb))
    return _impl("mul_table")(
        np.ascontiguousarray(a, np.int64),
        np.ascontiguousarray(b, np.int64),
        np.ascontiguousarray(codes, np.int64),
        int(theta),
        int(ma),
        int(mb),
    )
