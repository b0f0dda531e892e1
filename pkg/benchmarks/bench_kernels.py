#!/usr/bin/env python3
"""Benchmark the similarity-scan kernels: numba JIT loop vs pure numpy.

Builds a synthetic unit-normalized embedding matrix at configurable scale
and times repeated top-k scans through both code paths, verifying that they
agree on the result. The same selection works in production through the
QIRK_KERNEL environment variable.

    python3 benchmarks/bench_kernels.py --rows 200000 --dim 256
"""

import argparse
import time

import numpy as np

from qirk import kernels


def make_data(rows: int, dim: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    matrix = rng.normal(size=(rows, dim)).astype(np.float32)
    matrix /= np.linalg.norm(matrix, axis=1, keepdims=True)
    queries = rng.normal(size=(16, dim)).astype(np.float32)
    queries /= np.linalg.norm(queries, axis=1, keepdims=True)
    return np.ascontiguousarray(matrix), queries


def run_path(name: str, matrix, queries, repeats: int, monkeypatched_env):
    import os

    os.environ["QIRK_KERNEL"] = name
    kernels.reset_kernel()
    kernels.warmup()  # JIT compile outside the timed region
    assert kernels.active_kernel() == name

    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        for q in queries:
            result = kernels.similarity_scores(matrix, q)
        best = min(best, (time.perf_counter() - t0) / len(queries))
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=200_000)
    parser.add_argument("--dim", type=int, default=256)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"matrix: {args.rows} x {args.dim} float32 "
          f"({args.rows * args.dim * 4 / 1e6:.0f} MB)")
    matrix, queries = make_data(args.rows, args.dim)

    results = {}
    timings = {}
    for name in ("numpy", "numba"):
        try:
            per_query, scores = run_path(name, matrix, queries, args.repeats, None)
        except RuntimeError as exc:
            print(f"{name:>6}: unavailable ({exc})")
            continue
        timings[name] = per_query
        results[name] = scores
        rate = args.rows / per_query / 1e6
        print(f"{name:>6}: {per_query * 1e3:8.3f} ms/query "
              f"({rate:7.1f} M rows/s)")

    if len(results) == 2:
        a, b = results["numpy"], results["numba"]
        agree = np.allclose(a, b, atol=1e-5)
        top_a = np.argsort(-a)[:10]
        top_b = np.argsort(-b)[:10]
        print(f"paths agree: allclose={agree}, "
              f"same top-10 ids={list(top_a) == list(top_b)}")
        if timings["numba"] < timings["numpy"]:
            ratio = timings["numpy"] / timings["numba"]
            print(f"numba is {ratio:.2f}x faster at this size")
        else:
            ratio = timings["numba"] / timings["numpy"]
            print(f"numpy (BLAS) is {ratio:.2f}x faster at this size")

    kernels.reset_kernel()


if __name__ == "__main__":
    main()
