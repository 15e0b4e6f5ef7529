"""Compare the accelerated and pure-Python kernel backends on the hot loops.

Usage: python benchmarks/benchmark_backends.py [--trials 2000] [--repeat 3]
Both backends produce bit-identical output (asserted here), so the only
difference is speed.
"""

import argparse
import time

import numpy as np

from cubewalks._backend import get_kernels
from cubewalks.rng import derive_trial_seeds


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cases = [
        ("selfint n=64", "selfint_batch", (64, 64 * 64)),
        ("selfint n=256", "selfint_batch", (256, 64 * 256)),
        ("meeting n=32", "meeting_batch", (32, 40_000)),
        ("path-return n=12", "path_return_batch", (12, 3, 131_072, False)),
    ]
    seeds = derive_trial_seeds(0, args.trials)
    python = get_kernels("python")
    numba = get_kernels("numba")

    # Warm the JIT compiler outside the timed region.
    for _, kernel, params in cases:
        getattr(numba, kernel)(seeds[:2], *params)

    print(f"{args.trials} trials per case, best of {args.repeat} runs")
    print(f"{'case':<20} {'python':>10} {'numba':>10} {'speedup':>9}")
    for label, kernel, params in cases:
        t_py, out_py = _time(lambda: getattr(python, kernel)(seeds, *params), args.repeat)
        t_nb, out_nb = _time(lambda: getattr(numba, kernel)(seeds, *params), args.repeat)
        a = out_py[0] if isinstance(out_py, tuple) else out_py
        b = out_nb[0] if isinstance(out_nb, tuple) else out_nb
        assert np.array_equal(a, b), f"backend mismatch in {label}"
        print(f"{label:<20} {t_py:>9.3f}s {t_nb:>9.3f}s {t_py / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
