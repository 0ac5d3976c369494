"""Compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Sizes are the matrix dimensions met in practice: p^n for O_n and n p^n for L.
"""

import argparse
import timeit

import numpy as np

from wittlab import _kernels_py as py

try:
    from wittlab import _kernels as cy
except ImportError:  # pragma: no cover
    cy = None

CASES = [(5, 25), (7, 49), (3, 54), (5, 125)]


def bench(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if cy is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<18}{'p':>3}{'d':>5}{'python (ms)':>14}{'compiled (ms)':>15}{'speedup':>9}")
    for p, d in CASES:
        A = rng.integers(0, p, (d, d)).astype(np.int64)
        B = rng.integers(0, p, (d, d)).astype(np.int64)
        T = rng.integers(0, p, (d, d, 8)).astype(np.int64)
        jobs = {
            "matmul": lambda m: m.matmul_modp(A, B, p),
            "rref": lambda m: m.rref_modp(A, p),
            "charpoly": lambda m: m.charpoly_modp(A, p),
            "charpoly_dual8": lambda m: m.charpoly_multidual_modp(A, T, p),
        }
        for name, job in jobs.items():
            a = bench(lambda: job(py), args.repeat)
            b = bench(lambda: job(cy), args.repeat)
            print(f"{name:<18}{p:>3}{d:>5}{a * 1e3:>14.3f}{b * 1e3:>15.3f}{a / b:>8.1f}x")


if __name__ == "__main__":
    main()
