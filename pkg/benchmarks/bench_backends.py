#!/usr/bin/env python3
"""Benchmark the numba-JIT kernels against their pure-NumPy/Python twins.

The JIT side is the compiled kernel; the fallback side is the exact code the
package runs under DIAMOND_PURE_NUMPY=1 (``kernel.py_func`` for the scalar
loops, the ``*_np`` vectorized twins for the series chunks).  Run:

    python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import math
import time

from diamondqi import _kernels
from diamondqi._backend import USE_NUMBA, backend_name


def timeit(fn, repeats):
    fn()  # warm (JIT compile / cache load)
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    lnq = 2.0 * math.log(math.tanh(5.0))
    c2 = math.cosh(5.0) ** 2
    s2 = math.sinh(5.0) ** 2
    n1 = 200_000

    def kummer_small(fn):
        def run():
            for i in range(200):
                w = 0.5 + 0.03 * i
                fn(1 - 0.5j * w, 2.0 + 0j, 2j * (0.5 + 0.05 * i), 100_000)
        return run

    def kummer_dd(fn):
        def run():
            for i in range(50):
                fn(1.0, -0.5 - 0.01 * i, 2.0, 0.0, 30.0, 100_000)
        return run

    def chunk(fn):
        def run():
            fn(lnq, c2, s2, 0, n1)
        return run

    return [
        ("kummer series (|z|<=12, 200 evals)", kummer_small, "kummer_series_c128", None),
        ("kummer double-double (|z|=30, 50 evals)", kummer_dd, "kummer_series_dd", None),
        ("negativity series (200k terms)", chunk, "neg_chunk_numba", "neg_chunk_np"),
        ("entropy series (200k terms)", chunk, "entropy_chunk_numba", "entropy_chunk_np"),
        ("mutual-info series (200k terms)", chunk, "mutinfo_chunk_numba", "mutinfo_chunk_np"),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    print(f"active backend: {backend_name()}")
    if not USE_NUMBA:
        print("numba backend unavailable (DIAMOND_PURE_NUMPY set or numba missing);")
        print("timing the fallback path only.\n")

    header = f"{'workload':<42} {'numba':>10} {'fallback':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make, jit_name, np_name in workloads():
        jit_fn = getattr(_kernels, jit_name)
        if USE_NUMBA:
            fallback = getattr(_kernels, np_name) if np_name else jit_fn.py_func
            t_jit = timeit(make(jit_fn), args.repeats)
        else:
            fallback = getattr(_kernels, np_name) if np_name else jit_fn
            t_jit = float("nan")
        t_fb = timeit(make(fallback), args.repeats)
        speed = t_fb / t_jit if t_jit == t_jit else float("nan")
        print(f"{name:<42} {t_jit*1e3:>8.2f}ms {t_fb*1e3:>8.2f}ms {speed:>7.1f}x")


if __name__ == "__main__":
    main()
