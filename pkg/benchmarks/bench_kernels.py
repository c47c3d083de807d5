"""Time the compiled and pure-Python kernels on identical workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from lgcoh import _kernels_py, kernels


def _compiled():
    try:
        from lgcoh import _kernels
    except ImportError:
        return None
    return _kernels


def workloads(seed: int = 0):
    rng = random.Random(seed)
    vecs = [tuple(rng.randint(-12, 12) for _ in range(8)) for _ in range(20000)]
    lr_pairs = [((4, 3, 2, 1), (3, 2, 2, 1), 6), ((5, 3, 1), (4, 2, 2), 6), ((3, 3, 2, 1, 1), (3, 2, 1, 1), 7)]
    shapes = [((4, 2, 1), 5), ((3, 1, 1), 6), ((5, 3, 2, 1), 5)]
    a = _kernels_py.schur_monomials((3, 2, 1), 5)
    b = _kernels_py.schur_monomials((2, 2, 1), 5)
    return {
        "bott_length x20000": lambda k: [k.bott_length(v) for v in vecs],
        "lr_coefficients x3": lambda k: [k.lr_coefficients(l, m, n) for l, m, n in lr_pairs],
        "schur_monomials x3": lambda k: [k.schur_monomials(s, n) for s, n in shapes],
        "laurent_mul": lambda k: k.laurent_mul(a, b),
    }


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    comp = _compiled()
    print(f"default backend: {kernels.backend()}")
    print(f"{'kernel':<22}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, fn in workloads().items():
        tp = best_of(lambda: fn(_kernels_py), args.repeat)
        if comp is None:
            print(f"{name:<22}{tp:>12.4f}{'n/a':>14}{'':>10}")
            continue
        assert fn(_kernels_py) == fn(comp), f"backends disagree on {name}"
        tc = best_of(lambda: fn(comp), args.repeat)
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
