"""Compare the compiled and pure-Python exceptional-class scanners.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from hamlattice import _kernels_py
from hamlattice.weyl import exceptional_box_bounds

try:
    from hamlattice import _kernels
except ImportError:
    _kernels = None


def best_time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        rows = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, len(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    cases = [(k, 0, 6, 0, 3, -1, 1) for k in (6, 7, 8)]
    cases += [(k, *exceptional_box_bounds(k), -1, 1) for k in (6, 7)]
    print(f"{'case':<34}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for case in cases:
        tp, n = best_time(_kernels_py.scan_box, case, args.repeat)
        label = f"k={case[0]} d={case[1]}..{case[2]} m={case[3]}..{case[4]} ({n})"
        if _kernels is None:
            print(f"{label:<34}{tp * 1e3:>12.2f}{'n/a':>12}{'':>10}")
            continue
        tc, nc = best_time(_kernels.scan_box, case, args.repeat)
        assert nc == n
        print(f"{label:<34}{tp * 1e3:>12.2f}{tc * 1e3:>12.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
