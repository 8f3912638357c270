#!/usr/bin/env python3
"""Compare the compiled scan kernels against the NumPy fallback.

Two workloads: a dense synthetic set (every value present, injective
colors), which shows the raw probe rate, and a built shell instance, which
is the sparse pattern verification actually sees.

Usage: python benchmarks/bench_kernels.py [--n-dense 30000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from rainbowap import Params, build
from rainbowap._kernels import backends


def dense_instance(n):
    member = np.ones(n + 1, dtype=np.uint8)
    member[0] = 0
    colors = np.arange(n + 1, dtype=np.int64)
    values = np.arange(1, n + 1, dtype=np.int64)
    return member, colors, values


def built_instance(C, d, eps):
    cs = build(Params.create(C=C, d=d, epsilon=eps))
    return cs.A.member, cs.dense, cs.A.values()


def candidates(values, n, ell, d_max):
    """Start positions the scan visits: members up to n - (ell-1)*delta."""
    last = n - (ell - 1) * np.arange(1, d_max + 1, dtype=np.int64)
    return int(np.searchsorted(values, last, side="right").sum())


def run(label, member, colors, values, repeats):
    n = member.shape[0] - 1
    d_max = (n - 1) // 2
    cand = candidates(values, n, 3, d_max)
    print(f"\n{label}: n={n}, members={values.size}, start candidates={cand:,}")
    times = {}
    for name, impl in backends().items():
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            checked, total, _ = impl.ap_scan(member, colors, values, 3, 1, 1, d_max, 10)
            best = min(best, time.perf_counter() - t0)
        times[name] = best
        print(
            f"  {name:>8}: {best * 1000:8.1f} ms   "
            f"{cand / best / 1e6:8.1f} M starts/s   checked={checked:,} "
            f"violations={total}"
        )
    if "compiled" in times and "numpy" in times:
        print(f"  speedup compiled vs numpy: {times['numpy'] / times['compiled']:.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-dense", type=int, default=30000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    names = list(backends())
    print(f"available backends: {', '.join(names)}")

    run("dense full range", *dense_instance(args.n_dense), args.repeats)
    run("shell instance C=16 d=4 eps=1/50", *built_instance(16, 4, "1/50"), args.repeats)
    run("shell instance C=10 d=5 eps=1/100", *built_instance(10, 5, "1/100"), args.repeats)


if __name__ == "__main__":
    main()
