#!/usr/bin/env python3
"""Benchmark the mod-p rank kernels (compiled vs pure Python) and the exact
fraction-free elimination.

Usage: python benchmarks/bench_rank.py [--sizes 16x24,32x48,64x96] [--reps 20]
"""

import argparse
import random
import time

from mseg import _modrank_py
from mseg.linalg import KERNEL, MERSENNE61, IntMatrix, rank_exact

try:
    from mseg import _modrank as _compiled
except ImportError:
    _compiled = None


def bench(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16x24,32x48,64x96,96x144")
    ap.add_argument("--reps", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    p = MERSENNE61
    rng = random.Random(args.seed)
    print(f"active kernel: {KERNEL}; p = 2^61 - 1")
    header = f"{'size':>10} {'python':>12} {'compiled':>12} {'speedup':>9} {'exact':>12}"
    print(header)
    print("-" * len(header))
    for size in args.sizes.split(","):
        rows, cols = (int(v) for v in size.split("x"))
        entries = [rng.randrange(p) for _ in range(rows * cols)]
        mat = IntMatrix(rows, cols, tuple(entries))

        t_py = bench(lambda: _modrank_py.rank_mod(entries, rows, cols, p), args.reps)
        if _compiled is not None:
            t_c = bench(lambda: _compiled.rank_mod(entries, rows, cols, p), args.reps)
            speedup = f"{t_py / t_c:8.1f}x"
            t_c_str = f"{t_c * 1e3:10.3f}ms"
        else:
            speedup, t_c_str = "   n/a", "       n/a"
        # exact elimination on small entries (big minors dominate otherwise)
        small = IntMatrix(rows, cols, tuple(v % 1000 - 500 for v in entries))
        t_x = bench(lambda: rank_exact(small), max(1, args.reps // 4))
        print(
            f"{size:>10} {t_py * 1e3:10.3f}ms {t_c_str} {speedup} {t_x * 1e3:10.3f}ms"
        )


if __name__ == "__main__":
    main()
