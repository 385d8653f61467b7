#!/usr/bin/env python3
"""Benchmark the congruence-counting kernels: numba vs pure numpy.

Counting solutions of f = 0 mod p^j over (O/pi^j)^n dominates the runtime
of the verification suite; everything else in the package is small exact
algebra.  This script times both backends on the same workloads and checks
that the counts agree exactly.

Usage: python benchmarks/bench_oracle.py [--quick]
"""

import argparse
import time

from igusa_zeta import LocalRing, parse
from igusa_zeta import _kernels
from igusa_zeta.analysis import congruence_count

CASES = [
    # (label, poly text, prime, positive_char, level, quick)
    ("curve mod 5^5, 5^10 pts", "x^2+y^3", 5, False, 5, True),
    ("perturbed curve mod 7^4, 7^8 pts", "x^2+y^3+x*y^2", 7, False, 4, True),
    ("diagonal surface mod 5^3, 5^9 pts", "x^2+y^2+z^2", 5, False, 3, True),
    ("diagonal surface mod 7^3, 7^9 pts", "x^2+y^2+z^2", 7, False, 3, False),
    ("curve over F_5[u]/u^4, 5^8 pts", "x^2+u*y^3", 5, True, 4, True),
]


def timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="skip the largest case")
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy backend will run")

    # warm up JIT compilation outside the timed region
    if _kernels.HAVE_NUMBA:
        _kernels.set_backend("numba")
        warm = parse("x^2+y^3", LocalRing(3))
        congruence_count(warm, 2)
        congruence_count(parse("x^2+u*y^3", LocalRing(3, positive_char=True)), 2)

    header = f"{'case':<38} {'count':>12} {'numba':>9} {'numpy':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, text, p, positive_char, level, in_quick in CASES:
        if args.quick and not in_quick:
            continue
        ring = LocalRing(p, positive_char=positive_char)
        f = parse(text, ring)
        times = {}
        counts = {}
        for backend in ("numba", "numpy"):
            if backend == "numba" and not _kernels.HAVE_NUMBA:
                continue
            _kernels.set_backend(backend)
            counts[backend], times[backend] = timed(lambda: congruence_count(f, level))
        _kernels.set_backend(None)
        if len(counts) == 2 and counts["numba"] != counts["numpy"]:
            print(f"MISMATCH on {label}: {counts}")
            return 1
        count = next(iter(counts.values()))
        t_nb = f"{times['numba']:8.2f}s" if "numba" in times else "     n/a"
        t_np = f"{times['numpy']:8.2f}s"
        ratio = (
            f"{times['numpy'] / times['numba']:7.1f}x"
            if "numba" in times and times["numba"] > 0
            else "     n/a"
        )
        print(f"{label:<38} {count:>12} {t_nb} {t_np} {ratio}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
