"""Time the numba kernels against the numpy fallback on the sizes the sweeps use.

    python benchmarks/bench_kernels.py [--repeat 5]

Outputs are compared for equality before anything is timed.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from sl2char import _kernels as K
from sl2char.characters import quotient_group
from sl2char.padic import FieldContext, ThetaLabel
from sl2char.tori import key_moduli

CASES = [
    # (label, p, theta, K) for the norm-one scan; theta = eps or p
    ("norm_one p=5 eps K=3", 5, 2, 3),
    ("norm_one p=7 pi K=3", 7, 7, 3),
    ("norm_one p=5 eps K=4", 5, 2, 4),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def _same(x, y):
    if isinstance(x, tuple):
        return all(np.array_equal(u, v) for u, v in zip(x, y))
    return np.array_equal(x, y)


def run(repeat: int = 5):
    impls = K.IMPLEMENTATIONS
    if "numba" not in impls:
        print("numba unavailable; only the numpy path exists")
        return []
    nb, npy = impls["numba"], impls["numpy"]
    jobs = []
    for label, p, th, k in CASES:
        jobs.append((label, "norm_one_residues", (p, th, k)))
    for p, th, R in ((7, ThetaLabel.EPS, 6), (5, ThetaLabel.EPS, 12), (7, ThetaLabel.PI, 11)):
        ctx = FieldContext(p, R + 4)
        G = quotient_group(ctx, th, R, "cyclic")
        g = G.generators[0]
        ka, kb = key_moduli(th, R)
        args = (int(G.a[g]), int(G.b[g]), ctx.theta_int(th), G.n, p**ka, p**kb)
        jobs.append((f"orbit p={p} {th.value} n={G.n}", "cyclic_orbit", args))
    a, b = nb["norm_one_residues"](5, 2, 3)
    codes = a * 125 + b
    jobs.append((f"mul_table p=5 n={a.size}", "mul_table", (a, b, codes, 2, 125, 125)))

    rows = []
    for label, name, args in jobs:
        out_nb = nb[name](*args)       # also triggers compilation
        out_np = npy[name](*args)
        if not _same(out_nb, out_np):
            raise AssertionError(f"{label}: numba and numpy disagree")
        t_nb = best_of(lambda: nb[name](*args), repeat)
        t_np = best_of(lambda: npy[name](*args), repeat)
        rows.append((label, t_np, t_nb, t_np / t_nb))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rows = run(args.repeat)
    print(f"{'case':28s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>8s}")
    for label, t_np, t_nb, s in rows:
        print(f"{label:28s} {1e3 * t_np:12.3f} {1e3 * t_nb:12.3f} {s:8.1f}")


if __name__ == "__main__":
    main()
