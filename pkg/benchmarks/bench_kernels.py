#!/usr/bin/env python3
"""Benchmark the two kernel lanes (numba loops vs vectorized numpy).

Run from the repository root:

    python3 benchmarks/bench_kernels.py

The numba lane needs numba importable and KLOOSTER_NUMBA unset (or
truthy); each kernel is warmed once before timing so JIT compilation is
not counted.
"""

import time

import numpy as np

from klooster import _kernels as K
from klooster._accel import NUMBA_ENABLED


def timeit(fn, *args, repeats=3):
    fn(*args)  # warmup (JIT compile / cache load)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    if not NUMBA_ENABLED:
        print("numba lane unavailable (KLOOSTER_NUMBA=0 or numba missing); "
              "timing the numpy lane against itself is pointless -- rerun "
              "with the numba lane enabled.")
        return

    q, p = 3 ** 7, 3
    inv = K.inverse_table(q, p)
    units = np.nonzero(inv)[0].astype(np.int64)
    scaled = inv[units]
    cos_t, sin_t = K.circle_tables(q)
    rng = np.random.default_rng(1)
    row_a = rng.normal(size=q)
    row_b = rng.normal(size=q)
    bounds = np.array([40, 40], dtype=np.int64)

    cases = [
        ("inverse_table(3^11)",
         (K.inverse_table, 3 ** 11, 3),
         (K._inverse_table_numpy, 3 ** 11, 3)),
        ("exp_sum_row(3^7)",
         (K.exp_sum_row, q, units, scaled, cos_t, sin_t),
         (K._exp_sum_row_numpy, q, units, scaled, cos_t, sin_t)),
        ("kl_point_brute(3^10)",
         (K.kl_point_brute, 1, 1, 3 ** 10, 3),
         (K._kl_point_brute_numpy, 1, 1, 3 ** 10, 3)),
        ("tau_sieve(2e6)",
         (K.tau_sieve_values, 2 * 10 ** 6),
         (K._tau_sieve_numpy, 2 * 10 ** 6)),
        ("pair_scan(3^7)",
         (K.pair_scan_max_dev, row_a, row_b, q, p),
         (K._pair_scan_numpy, row_a, row_b, q, p)),
        ("parity_scan(3, L=3, H=12)",
         (K.parity_scan, 3, 3, 12),
         (K._parity_scan_numpy, 3, 3, 12)),
        ("near_collision(double 40x40)",
         (K.near_collision_scan, bounds, 3, 1, False),
         (K._near_collision_numpy, bounds, 3, 1, False)),
    ]

    print(f"{'kernel':<30} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, numba_call, numpy_call in cases:
        t_nb = timeit(numba_call[0], *numba_call[1:])
        t_np = timeit(numpy_call[0], *numpy_call[1:])
        print(f"{name:<30} {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms "
              f"{t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
