"""Compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is called with identical inputs on both backends; outputs are
compared before any timing is reported.
"""
import argparse
import random
import time

import numpy as np

from kstab.forms import monomials, sum_zero_box
from kstab.kernels import _pure

try:
    from kstab.kernels import _core
except ImportError:
    _core = None


def cases():
    rng = random.Random(0)
    support = rng.sample(monomials(5, 4), 40)
    ws = sum_zero_box(5, 2)
    diffs = [tuple(a - b for a, b in zip(support[i], support[i + 1])) for i in range(12)]
    return [
        ("hm_weights 40 monomials x %d one-PS" % len(ws), "hm_weights",
         (support, np.array(ws, dtype=np.int64)), (support, ws)),
        ("nullspace_candidates 12 diffs, 5 vars", "nullspace_candidates",
         (diffs, 5), (diffs, 5)),
        ("count_bounded_monomials n=6, m=30", "count_bounded_monomials",
         (6, 30, [3, 4, 5]), (6, 30, [3, 4, 5, 0, 0, 0])),
        ("monomial_weight_sum m=25, 5 vars", "monomial_weight_sum",
         (25, [3, 1, 0, -1, -3]), (25, [3, 1, 0, -1, -3])),
    ]


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def _same(a, b):
    to_list = lambda x: [list(map(int, r)) if hasattr(r, "__iter__") else int(r) for r in x] \
        if hasattr(x, "__iter__") else int(x)
    return to_list(a) == to_list(b)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled core not built; only the pure backend is available")
    print(f"{'kernel':45s} {'pure ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, name, core_args, pure_args in cases():
        pure_fn = getattr(_pure, name)
        tp = best_of(pure_fn, pure_args, args.repeat)
        if _core is None:
            print(f"{label:45s} {tp * 1e3:10.3f} {'-':>10s} {'-':>8s}")
            continue
        core_fn = getattr(_core, name)
        if not _same(core_fn(*core_args), pure_fn(*pure_args)):
            raise SystemExit(f"backend mismatch in {name}")
        tc = best_of(core_fn, core_args, args.repeat)
        print(f"{label:45s} {tp * 1e3:10.3f} {tc * 1e3:10.3f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
