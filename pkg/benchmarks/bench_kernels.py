"""Compare the compiled and fallback kernels.

    python benchmarks/bench_kernels.py [--pmax 31] [--limit 200000] [--repeat 3]
"""

import argparse
import time
from fractions import Fraction

from korselt import _backend
from korselt.core import naive_box_scan
from korselt.report import prime_pairs
from korselt.search import SearchFilter, b_korselt_set


def best_of(repeat, func):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = func()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=31)
    ap.add_argument("--limit", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    pairs = prime_pairs(args.pmax)
    workloads = {
        f"box scan, {len(pairs)} pairs q<={args.pmax}": lambda: [naive_box_scan(p).values() for p in pairs],
        f"base search 9/4, limit {args.limit}": lambda: b_korselt_set(Fraction(9, 4), args.limit, SearchFilter.ALL),
    }
    print(f"{'workload':<40} " + " ".join(f"{b:>10}" for b in _backend.available()) + "   speedup")
    for label, work in workloads.items():
        timings, results = {}, {}
        for name in _backend.available():
            _backend.use(name)
            timings[name], results[name] = best_of(args.repeat, work)
        same = len({repr(r) for r in results.values()}) == 1
        speedup = ""
        if "compiled" in timings:
            speedup = f"{timings['fallback'] / timings['compiled']:8.1f}x"
        cells = " ".join(f"{timings[b]:9.3f}s" for b in _backend.available())
        print(f"{label:<40} {cells} {speedup}{'' if same else '  RESULTS DIFFER'}")


if __name__ == "__main__":
    main()
