"""Timing comparison between the pure-Python kernels and the compiled twin.

Runs the hot numeric workloads (feasibility minimization, adaptive moment
quadrature, cumulant-measure quadrature, density inversion) against both
backends and prints a speedup table.  Usage:

    python benchmarks/bench_kernels.py [--repeat N]

Each timing is the best of N runs.  If the compiled extension is not built,
only the pure-Python column is reported.
"""

import argparse
import time
from math import pi

from fussdeform import _kernels_py as pure

try:
    from fussdeform import _kernels_cy as compiled
except ImportError:
    compiled = None


def psi_min_sweep(kern):
    acc = 0.0
    for i in range(40):
        p = 1.05 + i * 2.0 / 39
        acc += kern.psi_min(p, 0.3)[0]
    return acc


def moment_sweep(kern):
    acc = 0.0
    for n in range(8):
        acc += kern.moment_quad(1.5, 0.2, n)[0]
    return acc


def cumulant_sweep(kern):
    acc = 0.0
    for case, t in (("p2", 4.0 / 3.0), ("p3", 1.5), ("a220910", 1.5), ("a022558", 1.0)):
        for n in range(6):
            acc += kern.cumulant_quad(case, t, n)[0]
    return acc


def bisect_sweep(kern):
    p = 2.5
    top = pi / p
    acc = 0.0
    for i in range(500):
        x = 5.3 * (i + 0.5) / 500
        acc += kern.rho_bisect(p, x, top * 1e-9, top * (1.0 - 1e-9))
    return acc


WORKLOADS = (
    ("psi_min sweep (40 p-values)", psi_min_sweep),
    ("moment_quad n=0..7", moment_sweep),
    ("cumulant_quad 4 cases x 6", cumulant_sweep),
    ("rho_bisect x 500", bisect_sweep),
)


def best_time(fn, kern, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn(kern)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="runs per timing (best taken)")
    args = parser.parse_args()

    if compiled is None:
        print("compiled extension not built; timing the pure backend only")
    header = f"{'workload':<30} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, fn in WORKLOADS:
        t_py = best_time(fn, pure, args.repeat)
        if compiled is not None:
            t_cy = best_time(fn, compiled, args.repeat)
            print(f"{label:<30} {t_py:>9.4f}s {t_cy:>9.4f}s {t_py / t_cy:>7.1f}x")
        else:
            print(f"{label:<30} {t_py:>9.4f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
