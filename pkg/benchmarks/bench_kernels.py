"""Compiled kernels versus the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 100 1000 10000] [--repeat 5]

Prints best-of-``repeat`` wall time per call for the isotonic projection,
the sorted shrinkage, and the full 2OSCAR prox on an n-by-10 matrix.
"""

import argparse
import timeit

import numpy as np

from oscar2d import _backend
from oscar2d.prox import OscarParams, oscar_weights


def _prox_with(mod, Z, w):
    v = Z.ravel(order="F")
    order = np.argsort(-np.abs(v), kind="stable")
    x = np.empty_like(v)
    x[order] = mod.shrink_sorted(np.abs(v)[order], w)
    return (np.sign(v) * x).reshape(Z.shape, order="F")


def _time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10_000:
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def run(sizes, repeat, seed=0):
    if _backend.BACKEND != "cython":
        print("compiled kernels not available; build with `pip install -e .` first")
        return []
    rng = np.random.default_rng(seed)
    params = OscarParams(0.5, 0.0024)
    results = []
    for n in sizes:
        z = np.sort(rng.standard_normal(n))[::-1] + rng.standard_normal(n) * 0.3
        a = np.sort(np.abs(rng.standard_normal(n)) * 8)[::-1].copy()
        w = oscar_weights(n, params)
        Z = rng.standard_normal((max(n // 10, 1), 10)) * 8
        wz = oscar_weights(Z.size, params)
        cases = {
            "pav_nonincreasing": lambda m: m.pav_nonincreasing(z),
            "shrink_sorted": lambda m: m.shrink_sorted(a, w),
            "prox_2oscar": lambda m: _prox_with(m, Z, wz),
        }
        for name, call in cases.items():
            np.testing.assert_allclose(call(_backend.kernels), call(_backend.fallback),
                                       rtol=1e-12, atol=1e-12)
            fast = _time(lambda: call(_backend.kernels), repeat)
            slow = _time(lambda: call(_backend.fallback), repeat)
            results.append((name, n, fast, slow))
    return results


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1000, 10000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    results = run(args.sizes, args.repeat)
    if results:
        print(f"{'kernel':<18} {'n':>7} {'cython_us':>11} {'python_us':>11} {'speedup':>8}")
        for name, n, fast, slow in results:
            print(f"{name:<18} {n:>7} {fast * 1e6:>11.1f} {slow * 1e6:>11.1f} {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
