#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Runs identical workloads through both backends (toggled per call via
DISKORACLE_DISABLE_NUMBA) at the same instance size and prints a timing
table plus speedups; then shows the numba path at full size. The numpy path
exists for portability and debugging, not speed.

Usage: python benchmarks/compare_backends.py [--n 2000] [--full-n 100000]
"""

import argparse
import os
import time

import numpy as np

import diskoracle as dk
from diskoracle import kernels
from diskoracle.backend import ENV_FLAG


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return time.perf_counter() - t0, out


def measure(inst):
    grid = kernels.build_cube_grid(inst.points, inst.r)
    t_dij, _ = timed(kernels.run_dijkstra, grid, 0, -1, mode="full")
    t_ast, _ = timed(kernels.run_astar, grid, 0, inst.n - 1)
    t_cnt, _ = timed(kernels.count_edges, grid)
    t_q, _ = timed(dk.Oracle(inst).query, 0, inst.n - 1)
    return t_dij, t_ast, t_cnt, t_q


def run(n: int, full_n: int, seed: int):
    r = 2.0 * n ** -0.25
    inst = dk.gen_instance(n, 2, r, seed=seed)

    os.environ[ENV_FLAG] = ""
    measure(inst)  # warm the JIT cache outside the timed region
    nb = measure(inst)
    os.environ[ENV_FLAG] = "1"
    npy = measure(inst)
    os.environ.pop(ENV_FLAG, None)

    names = ("exhaustive dijkstra", "astar", "edge count", "oracle query")
    print(f"same workload, n={n}, r={r:.4f}")
    print(f"{'kernel':22s} {'numba':>10s} {'numpy':>10s} {'speedup':>9s}")
    for name, a, b in zip(names, nb, npy):
        print(f"{name:22s} {a:9.4f}s {b:9.4f}s {b / max(a, 1e-9):8.1f}x")

    rf = 2.0 * full_n ** -0.25
    big = dk.gen_instance(full_n, 2, rf, seed=seed)
    t_dij, _ = timed(lambda: measure(big))
    print(f"\nnumba at scale: n={full_n}, r={rf:.4f}, "
          f"dijkstra+astar+edges+query = {t_dij:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--full-n", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    run(a.n, a.full_n, a.seed)
