"""Compare the numba and numpy kernels on the exhaustive n = 2 scans.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Timings exclude the first (compiling) numba call; it is reported separately.
"""

import argparse
import time

import numpy as np

from ekmoduli import _kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def cases(n=2):
    q, smod, qmod = _kernels.Q_N[n], _kernels.sphere_modulus(n), _kernels.quotient_modulus(n)
    ks = np.arange(smod, dtype=np.int64)
    t = (2 * ks + 1) % (4 * smod)
    bucket = (t * t - 1) % (4 * smod)
    codes = _kernels.implementations("numpy")["quotient_codes"](ks, q, qmod)
    return {
        "quotient_codes": lambda impl: impl["quotient_codes"](ks, q, qmod),
        "replica_counts": lambda impl: impl["replica_counts"](smod - 1, q, smod, qmod),
        "bucket_violations": lambda impl: impl["bucket_violations"](bucket, codes),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    print(f"{'kernel':<20}{'backend':<8}{'first s':>10}{'best s':>10}{'speedup':>9}")
    for name, call in cases().items():
        baseline = None
        results = {}
        for backend in backends:
            impl = _kernels.implementations(backend)
            start = time.perf_counter()
            call(impl)
            first = time.perf_counter() - start
            best, results[backend] = _time(lambda: call(impl), args.repeat)
            baseline = baseline or best
            print(f"{name:<20}{backend:<8}{first:>10.4f}{best:>10.4f}{baseline / best:>8.1f}x")
        values = list(results.values())
        same = all(np.array_equal(np.asarray(v), np.asarray(values[0])) for v in values)
        if not same:
            raise SystemExit(f"{name}: backends disagree")


if __name__ == "__main__":
    main()
