#!/usr/bin/env python3
"""Timing comparison of the numba and numpy kernel backends.

Runs the two hot kernels (random-walk return sampling and the 1-D
jump-walk DP) under both backends and prints a table.  Results are
asserted bit-identical before timing, so the numbers compare equal
work.

    python3 benchmarks/bench_kernels.py [--samples N] [--t T]
"""

import argparse
import os
import time


def time_call(fn, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--walk-t", type=int, default=16)
    parser.add_argument("--jump-t", type=int, default=4096)
    args = parser.parse_args()

    from specwalk import _kernels, graphs

    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba unavailable; nothing to compare")

    g = graphs.generate("circulant", {"n": 60, "offsets": (1, 2, 7)}, 0)
    indptr, nbrs, cum = g.csr()

    rows = []
    for backend in ("numba", "numpy"):
        os.environ["SPECWALK_BACKEND"] = backend
        # warm-up triggers JIT compilation on the numba path
        _kernels.sample_return_hits(indptr, nbrs, cum, 0, 2, 1000, 0)
        secs, hits = time_call(lambda: _kernels.sample_return_hits(
            indptr, nbrs, cum, 0, args.walk_t, args.samples, 42))
        rows.append(("walk_returns", backend, secs, hits))

    assert rows[0][3] == rows[1][3], "backends disagree"

    for backend in ("numba", "numpy"):
        os.environ["SPECWALK_BACKEND"] = backend
        _kernels.jump_walk_distribution(8)
        secs, dist = time_call(lambda: _kernels.jump_walk_distribution(
            args.jump_t))
        rows.append(("jump_dp", backend, secs, float(dist[2 * args.jump_t])))

    assert rows[2][3] == rows[3][3], "backends disagree"

    print(f"{'kernel':14s} {'backend':8s} {'seconds':>10s}   result")
    speedups = {}
    for kernel, backend, secs, result in rows:
        print(f"{kernel:14s} {backend:8s} {secs:10.4f}   {result}")
        speedups.setdefault(kernel, {})[backend] = secs
    for kernel, t in speedups.items():
        print(f"{kernel}: numpy/numba = {t['numpy'] / t['numba']:.2f}x")


if __name__ == "__main__":
    main()
