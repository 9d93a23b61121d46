"""Compare the numba and numpy kernels on a full exhaustive sweep.

    python3 benchmarks/bench_kernels.py [FAMILY N] [--repeat K]

Defaults to D5 (2^20 tournaments).  Results are checked for equality
before timings are reported.
"""

import argparse
import time

import numpy as np

from coxtour import RootSystem
from coxtour import _kernels
from coxtour.core import root_matrix
from coxtour.generators import template_table
from coxtour.oracle import all_codes


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("family", nargs="?", default="D")
    parser.add_argument("n", nargs="?", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    system = RootSystem(args.family, args.n)
    codes = all_codes(system, force=True)
    roots = root_matrix(system)
    edges, table = template_table(system)
    m = system.num_positive_roots
    print(f"{system}: {codes.size} tournaments, {len(edges)} generator templates")

    kernels = {
        "scores": lambda b: _kernels.doubled_scores(codes, roots, backend=b),
        "generator counts": lambda b: _kernels.weighted_generator_counts(codes, m, edges, table, backend=b),
    }
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if _kernels.HAVE_NUMBA:
        for fn in kernels.values():  # compile outside the timed region
            fn("numba")

    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in kernels.items():
        timings, outputs = zip(*(best_of(lambda: fn(b), args.repeat) for b in backends))
        if len(outputs) > 1 and not np.array_equal(outputs[0], outputs[1]):
            raise SystemExit(f"{name}: backends disagree")
        row = f"{name:<18}" + "".join(f"{t * 1e3:>10.1f}ms" for t in timings)
        if len(timings) > 1:
            row += f"{timings[0] / timings[1]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
