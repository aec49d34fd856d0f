"""Compare the compiled and pure-Python float kernels.

    python3 benchmarks/bench_kernels.py [--samples N] [--repeat R]
"""

import argparse
import cmath
import math
import timeit

from ioacheck import _kernels_py

try:
    from ioacheck import _kernels
except ImportError:
    _kernels = None


def workload(n):
    ts = [i / n for i in range(n)]
    z1 = [cmath.rect(3 + math.sin(7 * t), 0.3 + 5.5 * t) for t in ts]
    z2 = [cmath.rect(1.5 + 0.5 * math.cos(3 * t), 0.2 + 5.8 * t) for t in ts]
    diffs = [a - b for a, b in zip(z1, z2)]
    return z1, z2, diffs


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    z1, z2, diffs = workload(args.samples)

    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    results = {}
    for name, mod in backends:
        walk = min(timeit.repeat(lambda: mod.arg_walk(diffs), number=1, repeat=args.repeat))
        clear = min(timeit.repeat(lambda: mod.min_clearance(z1, z2, 1), number=1, repeat=args.repeat))
        results[name] = (walk, clear, mod.arg_walk(diffs), mod.min_clearance(z1, z2, 1))
        print(f"{name:7s} arg_walk {walk * 1e3:8.2f} ms   min_clearance {clear * 1e3:8.2f} ms")

    if "cython" in results:
        py, cy = results["python"], results["cython"]
        print(f"speedup arg_walk {py[0] / cy[0]:.1f}x   min_clearance {py[1] / cy[1]:.1f}x")
        assert abs(py[2][0] - cy[2][0]) < 1e-9 and abs(py[3] - cy[3]) < 1e-12, "backends disagree"
    else:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
