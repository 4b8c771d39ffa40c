"""Time each numeric kernel on its numba and numpy paths.

    python benchmarks/bench_kernels.py [--repeat N]

The first numba call (compilation, or loading the on-disk cache) is timed
separately and excluded from the per-call figures.
"""
import argparse
import time

import numpy as np

from affinecs import _accel, kernels
from affinecs.quad import gauss_hermite_nodes, halfplane_rule


def cases():
    rng = np.random.default_rng(0)
    t, w = gauss_hermite_nodes(60)
    coeffs = rng.normal(size=6) + 0j
    rule = halfplane_rule()
    c = 1.0 - 1j * rule.nodes
    fz = 1.0 / (1.0 - 1j * rule.nodes) ** 1.5
    p = np.linspace(-3, 3, 61)
    x = 0.5 * np.exp(2j * np.pi * rng.uniform(size=4000))
    f = rng.normal(size=rule.size) + 1j * rng.normal(size=rule.size)
    wts = rule.weights(0.5)
    return {
        "gauss_sum": (kernels._gauss_sum_numba, kernels._gauss_sum_numpy, (coeffs, 1, c, t, w)),
        "inverse_sum": (kernels._inverse_sum_numba, kernels._inverse_sum_numpy,
                        (p, rule.nodes, fz, wts, 1)),
        "weighted_inner": (kernels._weighted_inner_numba, kernels._weighted_inner_numpy, (f, f, wts)),
        "pochhammer_series": (kernels._pochhammer_series_numba, kernels._pochhammer_series_numpy,
                              (x, 2.5, 200)),
    }


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba available: {_accel.HAVE_NUMBA}")
    print(f"{'kernel':<18} {'first numba':>12} {'numba':>10} {'numpy':>10} {'speedup':>8} {'max diff':>9}")
    for name, (fn_nb, fn_np, a) in cases().items():
        ref = fn_np(*a)
        t_np = best_of(fn_np, a, args.repeat)
        if _accel.HAVE_NUMBA:
            t0 = time.perf_counter()
            got = fn_nb(*a)
            first = time.perf_counter() - t0
            t_nb = best_of(fn_nb, a, args.repeat)
            diff = float(np.max(np.abs(np.asarray(got) - np.asarray(ref))))
            print(f"{name:<18} {first:>11.3f}s {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms "
                  f"{t_np / t_nb:>7.1f}x {diff:>9.1e}")
        else:
            print(f"{name:<18} {'-':>12} {'-':>10} {t_np * 1e3:>8.2f}ms")


if __name__ == "__main__":
    main()
