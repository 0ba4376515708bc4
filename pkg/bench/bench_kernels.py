"""Compare the compiled and pure-Python grid kernels.

Runs the same dense polynomial grid (forward differencing + scaled
rounding) through both backends, checks that the outputs agree, and prints
the timings.  Usage: ``python3 bench/bench_kernels.py [degree] [points]``.
"""

import importlib
import random
import sys
import time

from stratum import _kernels_py


def workload(degree: int, seed: int = 7):
    rng = random.Random(seed)
    diffs = [rng.randrange(-10**40, 10**40) for _ in range(degree + 1)]
    return diffs, rng.randrange(1, 10**30)


def run(mod, diffs, den, points, shift=40):
    t = time.perf_counter()
    grid = mod.forward_grid(diffs, points)
    out = mod.scaled_round(grid, den, shift)
    return time.perf_counter() - t, out


def main():
    degree = int(sys.argv[1]) if len(sys.argv) > 1 else 64
    points = int(sys.argv[2]) if len(sys.argv) > 2 else 4097
    diffs, den = workload(degree)
    backends = [("python", _kernels_py)]
    try:
        backends.append(("cython", importlib.import_module("stratum._kernels")))
    except ImportError:
        print("compiled kernels not built; timing the fallback only")
    results = {}
    for name, mod in backends:
        best = min(run(mod, diffs, den, points)[0] for _ in range(3))
        results[name] = run(mod, diffs, den, points)[1]
        print(f"{name:7s} degree={degree} points={points} best={best * 1e3:.1f} ms")
    outs = list(results.values())
    assert all(o == outs[0] for o in outs), "backends disagree"
    print("outputs identical across backends")


if __name__ == "__main__":
    main()
