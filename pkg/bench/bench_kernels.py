"""Benchmark the integer kernels: compiled extension vs pure Python.

Times the exhaustive toric-criterion sweep (the hot loop of the
verification suite) and batched monodromy products on both backends, and
checks that they agree on every output.

Usage: python bench/bench_kernels.py
"""

import time
from itertools import product

from tropcyl import _kernels_py as pure

try:
    from tropcyl import _speedups as compiled
except ImportError:
    compiled = None


def timeit(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def bench_sweep(backend):
    def run():
        return [backend.verify_toric_grid(l, -3, 3) for l in range(3, 7)]
    return timeit(run)


def bench_monodromy(backend, batch):
    def run():
        return [backend.monodromy_product(ds) for ds in batch]
    return timeit(run)


def main():
    print(f"{'kernel':<28} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    batch = list(product(range(-3, 4), repeat=5))

    rows = [
        ("toric sweep l=3..6, |d|<=3", bench_sweep, ()),
        (f"monodromy batch ({len(batch)})", bench_monodromy, (batch,)),
    ]
    for label, fn, extra in rows:
        t_pure, r_pure = fn(pure, *extra)
        if compiled is None:
            print(f"{label:<28} {t_pure * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
            continue
        t_comp, r_comp = fn(compiled, *extra)
        assert r_pure == r_comp, f"backend disagreement in {label}"
        print(f"{label:<28} {t_pure * 1e3:>8.1f}ms {t_comp * 1e3:>8.1f}ms "
              f"{t_pure / t_comp:>7.1f}x")

    if compiled is None:
        print("\ncompiled kernels not built; showing pure timings only")


if __name__ == "__main__":
    main()
