"""Timing comparison of the two phase-sum kernels.

The estimator's hot loop reduces every (M, N) eigenvalue block to M complex
linear statistics per grid point. Both implementations are exact to rounding;
this script measures them side by side so the compiled extension's value on a
given machine is a number, not a guess.

    python3 bench/bench_kernels.py [--points 40] [--repeats 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from dsff_lab import _phase_np
from dsff_lab.kernels import backend

try:
    from dsff_lab import _phase_cy
except ImportError:
    _phase_cy = None

SIZES = ((200, 64), (200, 256), (1000, 256))


def _time_per_point(fn, re, im, taus, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for t, s in taus:
            fn(re, im, t, s)
        best = min(best, time.perf_counter() - start)
    return best / len(taus)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=40)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(8571)
    radii = np.geomspace(0.3, 25.0, args.points)
    taus = [(float(r), 0.0) for r in radii]

    print(f"active backend: {backend()}")
    header = f"{'M':>6} {'N':>6} {'numpy ms':>10} {'compiled ms':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for m, n in SIZES:
        eigs = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        re = np.ascontiguousarray(eigs.real)
        im = np.ascontiguousarray(eigs.imag)
        t_np = _time_per_point(_phase_np.linear_stat_sums, re, im, taus, args.repeats)
        if _phase_cy is None:
            print(f"{m:>6} {n:>6} {t_np * 1e3:>10.3f} {'n/a':>12} {'n/a':>8}")
            continue
        t_cy = _time_per_point(_phase_cy.linear_stat_sums, re, im, taus, args.repeats)
        diff = np.max(
            np.abs(
                _phase_np.linear_stat_sums(re, im, 1.3, 0.4)
                - _phase_cy.linear_stat_sums(re, im, 1.3, 0.4)
            )
        )
        print(f"{m:>6} {n:>6} {t_np * 1e3:>10.3f} {t_cy * 1e3:>12.3f} {t_np / t_cy:>8.2f}")
        assert diff < 1e-9 * n, f"backends disagree: {diff}"


if __name__ == "__main__":
    main()
