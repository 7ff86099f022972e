"""Compare the numba and numpy kernel paths.

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 64,139,256,1021]

Numba functions are warmed up once before timing so compilation is excluded.
"""
import argparse
import time

import numpy as np

from chuxcorr import _kernels
from chuxcorr.chu import phase_exponents
from chuxcorr.numtheory import divisors, unit_group


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n):
    units = unit_group(n).members
    table = _kernels.phase_table(n)
    er, es = phase_exponents(n, units[0]), phase_exponents(n, units[-1])
    lags = np.arange(n, dtype=np.int64)
    # keep the all-pairs case bounded for large n
    roots = units[: min(len(units), 48)]
    exps = np.stack([phase_exponents(n, r) for r in roots])
    u = np.asarray(units, dtype=np.int64)
    divs = np.asarray(divisors(n), dtype=np.int64)
    return {
        "xcorr_lags": (lambda: _kernels.xcorr_lags_numba(er, es, table, lags),
                       lambda: _kernels.xcorr_lags_numpy(er, es, table, lags)),
        f"xcorr_pairs[{len(roots)}]": (lambda: _kernels.xcorr_pairs_numba(exps, table),
                                       lambda: _kernels.xcorr_pairs_numpy(exps, table)),
        "gcd_class_counts": (lambda: _kernels.gcd_class_counts_numba(u, n, divs),
                             lambda: _kernels.gcd_class_counts_numpy(u, n, divs)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,139,256,1021")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"{'kernel':<22}{'N':>6}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for n in (int(s) for s in args.sizes.split(",")):
        for name, (fast, slow) in cases(n).items():
            if n > 300 and name.startswith("xcorr_pairs"):
                continue
            fast()  # compile / warm up
            t_nb = best_of(fast, args.repeat)
            t_np = best_of(slow, args.repeat)
            print(f"{name:<22}{n:>6}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
