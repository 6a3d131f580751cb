#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Runs each hot kernel on a mid-size instance with both backends and prints a
comparison table. The numba timings exclude the first (compilation) call.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import transvect.kernels as kernels  # noqa: E402


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_orbits(dim: int):
    rng = random.Random(1)
    gram = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            gram[i][j] = gram[j][i] = rng.randrange(2)
    cond = np.array([sum(1 << j for j in range(dim) if j == i) for i in range(dim)], np.int64)
    flip = np.array(
        [sum(gram[i][j] << j for j in range(dim)) for i in range(dim)], np.int64
    )
    inv = np.zeros(dim, np.int64)
    n_states = 1 << dim
    kernels._orbit_labels_numba(n_states, cond, flip, inv)  # compile
    t_nb, a = timed(kernels._orbit_labels_numba, n_states, cond, flip, inv)
    t_np, b = timed(kernels._orbit_labels_numpy, n_states, cond, flip, inv)
    assert np.array_equal(a, b)
    return f"orbit labels (2^{dim} states, {dim} generators)", t_nb, t_np


def bench_canonical(n: int, count: int):
    rng = random.Random(2)
    npairs = n * (n - 1) // 2
    weights = (np.uint64(1) << np.arange(npairs - 1, -1, -1, dtype=np.uint64)).astype(np.uint64)
    srcs = next(kernels._iter_perm_chunks(n))
    graphs = [
        np.array([rng.randrange(2) for _ in range(npairs)], dtype=np.uint8)
        for _ in range(count)
    ]
    kernels._min_code_numba(graphs[0], srcs, weights)  # compile

    def run(fn):
        return [int(fn(g, srcs, weights)) for g in graphs]

    t_nb, a = timed(run, kernels._min_code_numba, repeat=2)
    t_np, b = timed(run, kernels._min_code_numpy, repeat=2)
    assert a == b
    return f"canonical codes ({count} graphs on {n} vertices)", t_nb, t_np


def bench_xor(dim: int, orbit_size: int):
    rng = np.random.default_rng(3)
    mask = rng.integers(0, 2, 1 << dim).astype(bool)
    orbit = np.unique(rng.integers(0, 1 << dim, orbit_size)).astype(np.int64)
    kernels._xor_expand_numba(mask, orbit)  # compile
    t_nb, a = timed(kernels._xor_expand_numba, mask, orbit)
    t_np, b = timed(kernels._xor_expand_numpy, mask, orbit)
    assert np.array_equal(a, b)
    return f"xor layer expand (2^{dim} states, |orbit|={len(orbit)})", t_nb, t_np


def main() -> None:
    rows = [
        bench_orbits(18),
        bench_canonical(7, 500),
        bench_xor(16, 2000),
    ]
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_nb, t_np in rows:
        print(f"{name:<{width}}  {t_nb * 1e3:>8.1f}ms  {t_np * 1e3:>8.1f}ms  {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
