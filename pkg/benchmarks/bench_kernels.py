"""Benchmark the numba kernels against their pure-numpy twins.

Runs each batched kernel on the same workload under both backends, checks
the outputs agree, and prints best-of-N wall times with the speedup.  The
first numba call pays JIT compilation; a warmup round keeps that out of
the timings.

    python3 benchmarks/bench_kernels.py --rows 100000 --repeats 5
"""

import argparse
import os
import time

import numpy as np

from loopfusion import kernels
from loopfusion.fusion import alcove_weights
from loopfusion.rootdata import build_root_system


def time_call(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads(rows):
    rng = np.random.default_rng(7)
    rs = build_root_system("F4")
    xs = rng.integers(-50, 51, size=(rows, rs.rank)).astype(np.int64)
    yield "dominant_reduce", lambda: kernels.dominant_reduce_batch(rs.np_simple, xs)

    kappa = rs.dual_coxeter + 3
    ys = rng.integers(-20, 21, size=(rows, rs.rank)).astype(np.int64)
    bound = 10 * kappa * len(rs.positive_roots) + 10
    yield "alcove_reduce", lambda: kernels.alcove_reduce_batch(
        rs.np_simple, rs.np_theta, rs.np_comarks, kappa, ys, bound
    )

    k = 3
    kappa = rs.dual_coxeter + k
    mats, signs = rs.weyl_matrices()
    labels = np.array([lw.weight for lw in alcove_weights(rs, k)], dtype=np.int64)
    shifted = labels + 1
    denom = kappa * rs.form_den
    yield "signed_weyl_sum", lambda: kernels.signed_weyl_sum(
        mats, signs, rs.np_form_int, shifted, shifted, denom
    )


def agree(a, b):
    pair = zip(a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,))
    return all(np.allclose(x, y) for x, y in pair)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=100_000)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print(f"{'kernel':<18} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, call in workloads(args.rows):
        results = {}
        times = {}
        for backend in ("numba", "numpy"):
            os.environ[kernels.BACKEND_ENV] = backend
            call()  # warmup; includes JIT compile on the numba pass
            times[backend], results[backend] = time_call(call, args.repeats)
        os.environ.pop(kernels.BACKEND_ENV, None)
        if not agree(results["numba"], results["numpy"]):
            raise SystemExit(f"backend outputs disagree on {name}")
        ratio = times["numpy"] / times["numba"]
        print(
            f"{name:<18} {times['numba'] * 1e3:>8.2f}ms {times['numpy'] * 1e3:>8.2f}ms {ratio:>7.1f}x"
        )


if __name__ == "__main__":
    main()
