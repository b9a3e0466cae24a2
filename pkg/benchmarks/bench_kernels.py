"""Time the compiled and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from beliefevo import kernels


def cases(rng):
    for n in (4, 8, 12):
        v = rng.random(1 << n)
        v[0] = 0.0
        v /= v.sum()
        yield f"superset_sum n={n}", kernels.superset_sum, (v, n)
        yield f"full_causality n={n}", kernels.full_causality, (v, n)
        yield f"fcpt_run n={n}", kernels.fcpt_run, (v, n)
    for classes in (3, 7):
        p1 = rng.dirichlet(np.ones(classes), size=1000)
        p2 = rng.dirichlet(np.ones(classes), size=1000)
        yield f"pcr_batch 1000x{classes}", kernels.pcr_batch, (p1, p2)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    names = list(kernels.BACKENDS)
    print(f"{'kernel':<24}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'speedup':>10}")
    for label, func, inputs in cases(np.random.default_rng(0)):
        best = {}
        for name in names:
            previous = kernels.use_backend(name)
            try:
                timer = timeit.Timer(lambda: func(*inputs))
                number, _ = timer.autorange()
                best[name] = min(timer.repeat(args.repeat, number)) / number
            finally:
                kernels.use_backend(previous)
        row = f"{label:<24}" + "".join(f"{best[n] * 1e3:>16.4f}" for n in names)
        if len(names) > 1:
            row += f"{best['numpy'] / best['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
