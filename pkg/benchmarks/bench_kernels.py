"""Compiled vs pure-Python pair kernel, and the end-to-end modular that uses it.

    python benchmarks/bench_kernels.py [--sizes 501 1001 2001 4001] [--repeat 3]
"""

import argparse
import math
import time

import numpy as np

from fracorlicz import _pykernels, kernels
from fracorlicz.seminorm import ModularConfig, PairTable
from fracorlicz.young import power


def _best(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[501, 1001, 2001, 4001])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    compiled = kernels.BACKEND == "cython"
    if not compiled:
        print("compiled kernels unavailable; timing the fallback only")
    sigma, cfg = 0.5, ModularConfig()
    print(f"{'N':>6} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8} {'max rel diff':>13}")
    for N in args.sizes:
        x = np.linspace(-1.5, 1.5, N)
        v = np.clip(1 - np.abs(x), 0, None)
        h = float(x[1] - x[0])
        log_hi = math.log(2.0) - sigma * math.log(h) + 1.0
        a = (v, h, sigma, log_hi - cfg.bins * cfg.bin_width, 1.0 / cfg.bin_width, cfg.bins)
        t_py = _best(lambda: _pykernels.pair_moments(*a), args.repeat)
        if compiled:
            t_c = _best(lambda: kernels.pair_moments(*a), args.repeat)
            w0, _ = _pykernels.pair_moments(*a)
            w1, _ = kernels.pair_moments(*a)
            diff = float(np.max(np.abs(w0 - w1)) / np.max(w0))
            print(f"{N:6d} {t_py:11.4f} {t_c:11.4f} {t_py / t_c:8.1f} {diff:13.2e}")
        else:
            print(f"{N:6d} {t_py:11.4f} {'-':>11} {'-':>8} {'-':>13}")

    # end to end: build the pair table once, evaluate many modulars
    u_x = np.linspace(-1.5, 1.5, 2001)
    from fracorlicz.functions import SampledFunction

    u = SampledFunction(u_x, np.clip(1 - np.abs(u_x), 0, None))
    A = power(2.0)
    t_tab = _best(lambda: PairTable(u, sigma), args.repeat)
    tab = PairTable(u, sigma)
    t_mod = _best(lambda: tab.modular(A, 1.0), args.repeat)
    print(f"\nN=2001 pair table: {t_tab:.4f} s, one modular evaluation: {t_mod:.4f} s "
          f"(backend: {kernels.BACKEND})")


if __name__ == "__main__":
    main()
