#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Runs the permutation-sum (immanant) kernel, the Gray-code permanent, and
the full N = 4 correlation tensor on both backends and prints a timing
table.  Usage:

    python benchmarks/bench_kernels.py [--repeats 5]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from anyonsim.exchange import correlation_tensor
from anyonsim.kernels import pykernels

try:
    from anyonsim.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(repeats, fn, *args):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        timings.append(time.perf_counter() - start)
    return min(timings)


def fmt_time(seconds: float) -> str:
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.2f} s "


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    rows = []

    for n in (6, 7, 8, 9):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        py = best_of(args.repeats, pykernels.immanant_sum, a, 1.234)
        cc = (best_of(args.repeats, _ckernels.immanant_sum, a, 1.234)
              if _ckernels else None)
        rows.append((f"immanant_sum n={n} ({math.factorial(n)} perms)", py, cc))

    for n in (8, 12, 16):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        py = best_of(args.repeats, pykernels.ryser_permanent, a)
        cc = (best_of(args.repeats, _ckernels.ryser_permanent, a)
              if _ckernels else None)
        rows.append((f"ryser_permanent n={n} (2^{n} subsets)", py, cc))

    z = rng.standard_normal((10, 10)) + 1j * rng.standard_normal((10, 10))
    q, _ = np.linalg.qr(z)
    tensor = best_of(args.repeats, correlation_tensor, q, (0, 3, 6, 9), 1.234)
    rows.append(("correlation_tensor N=4, 10 modes (NumPy, shared)", tensor, tensor))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'python':>12}  {'compiled':>12}  speedup")
    for name, py, cc in rows:
        if cc is None:
            print(f"{name:<{width}}  {fmt_time(py):>12}  {'n/a':>12}")
        else:
            print(f"{name:<{width}}  {fmt_time(py):>12}  {fmt_time(cc):>12}  "
                  f"{py / cc:7.1f}x")
    if _ckernels is None:
        print("\ncompiled backend not built; showing fallback only")


if __name__ == "__main__":
    main()
