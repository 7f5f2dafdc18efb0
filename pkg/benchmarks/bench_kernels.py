"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 10,100,1000,10000]
"""

import argparse
import timeit

import numpy as np

from nnjsd import _kernels_py, series_coefficients

try:
    from nnjsd import _kernels as _compiled
except ImportError:
    _compiled = None


def _cases(n, rng):
    p = rng.standard_exponential(n)
    p /= p.sum()
    eps = rng.uniform(-0.3, 0.3, n)
    b = series_coefficients(0.3, 12).b
    return {
        "series_deltas k=12": lambda m: m.series_deltas(eps, b),
        "exact_deltas": lambda m: m.exact_deltas(eps, 0.3),
        "entropy_sum": lambda m: m.entropy_sum(p),
        "half_weighted_sum": lambda m: m.half_weighted_sum(p, eps),
    }


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="10,100,1000,10000")
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled backend not built; only timing the pure-Python kernels")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<20} {'n':>6} {'python us':>11} {'cython us':>11} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        for name, call in _cases(n, rng).items():
            tp = best_time(lambda: call(_kernels_py), args.repeat) * 1e6
            if _compiled is None:
                print(f"{name:<20} {n:>6} {tp:>11.2f} {'-':>11} {'-':>8}")
                continue
            tc = best_time(lambda: call(_compiled), args.repeat) * 1e6
            print(f"{name:<20} {n:>6} {tp:>11.2f} {tc:>11.2f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
