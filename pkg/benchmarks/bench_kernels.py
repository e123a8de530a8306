"""Numba vs numpy backends of the F2 kernels.

    python3 benchmarks/bench_kernels.py [--sizes 64 256 1024] [--repeat 5]

Both backends are called directly, so the COACT_NUMBA flag does not matter here.
Results are checked for equality before timing is reported.
"""
import argparse
import time

import numpy as np

from coact import _kernels as K


def best_of(f, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        f()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_rref(n, repeat, rng):
    dense = (rng.random((n, n + n // 2)) < 0.3).astype(np.uint8)
    W = K.pack_rows(dense)
    ncols = dense.shape[1]
    Ra, pa = K._rref_numpy(W, ncols)
    Rb, pb = K._rref_numba(W, ncols)
    assert np.array_equal(pa, pb) and np.array_equal(Ra, Rb)
    t_np = best_of(lambda: K._rref_numpy(W, ncols), repeat)
    t_nb = best_of(lambda: K._rref_numba(W, ncols), repeat)
    return t_np, t_nb


def bench_series(n, repeat, rng):
    k = 200
    degs = rng.integers(1, 64, size=k).astype(np.int64)
    heights = rng.integers(0, 4, size=k).astype(np.int64)
    a = K._series_product_numpy(degs, heights, n)
    b = K._series_product_numba(degs, heights, n)
    assert np.array_equal(a, b)
    t_np = best_of(lambda: K._series_product_numpy(degs, heights, n), repeat)
    t_nb = best_of(lambda: K._series_product_numba(degs, heights, n), repeat)
    return t_np, t_nb


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K._HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    rng = np.random.default_rng(0)
    # compile once outside the timings
    bench_rref(8, 1, rng)
    bench_series(8, 1, rng)
    print("%-8s %8s %12s %12s %8s" % ("kernel", "size", "numpy (s)", "numba (s)", "speedup"))
    for n in args.sizes:
        a, b = bench_rref(n, args.repeat, rng)
        print("%-8s %8d %12.5f %12.5f %7.1fx" % ("rref", n, a, b, a / b))
    for n in args.sizes:
        a, b = bench_series(4 * n, args.repeat, rng)
        print("%-8s %8d %12.5f %12.5f %7.1fx" % ("series", 4 * n, a, b, a / b))


if __name__ == "__main__":
    main()
