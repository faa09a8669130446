"""Integer hot loops, compiled when the extension is built.

The compiled core works in int64; each entry point checks that the input
cannot overflow and otherwise routes to the pure-Python twin, which works
on unbounded ints. Set ``KSTAB_PURE=1`` to force the pure path.
"""
import math
import os

import numpy as np

from . import _pure

try:
    if os.environ.get("KSTAB_PURE"):
        raise ImportError("pure backend requested")
    from . import _core
except ImportError:
    _core = None

BACKEND = "cython" if _core is not None else "python"

_LIMIT = 2 ** 62


def _max_abs(rows):
    return max((abs(x) for r in rows for x in r), default=0)


def hm_weights(support, ws):
    """``ws`` may be a prebuilt int64 array, which skips per-call conversion."""
    support = [tuple(a) for a in support]
    if isinstance(ws, np.ndarray):
        if ws.size == 0:
            return []
        wmax = int(np.abs(ws).max())
    else:
        ws = [tuple(w) for w in ws]
        if not ws:
            return []
        wmax = _max_abs(ws)
    if _core is not None and support:
        nv = len(support[0])
        if _max_abs(support) * wmax * nv < _LIMIT:
            return _core.hm_weights(support, ws)
    if isinstance(ws, np.ndarray):
        ws = [tuple(int(x) for x in w) for w in ws]
    return _pure.hm_weights(support, ws)


def nullspace_candidates(diffs, nvars):
    diffs = [tuple(d) for d in diffs]
    if _core is not None and nvars >= 2:
        size = nvars - 1
        a = max(_max_abs(diffs), 1)
        hadamard = (a * math.sqrt(size)) ** size
        if hadamard * hadamard < _LIMIT / 4:
            return _core.nullspace_candidates(diffs, nvars)
    return _pure.nullspace_candidates(diffs, nvars)


def count_bounded_monomials(nvars, m, bounds):
    bounds = list(bounds) + [0] * (nvars - len(bounds))
    if _core is not None and nvars >= 1 and m < 10_000 and math.comb(m + nvars, nvars) < _LIMIT:
        return _core.count_bounded_monomials(nvars, m, bounds)
    return _pure.count_bounded_monomials(nvars, m, bounds)


def monomial_weight_sum(m, w):
    w = list(w)
    if _core is not None and w and m < 10_000:
        bound = math.comb(m + len(w), len(w)) * (m + 1) * (max(abs(x) for x in w) + 1)
        if bound < _LIMIT:
            return _core.monomial_weight_sum(m, w)
    return _pure.monomial_weight_sum(m, w)


__all__ = [
    "BACKEND",
    "hm_weights",
    "nullspace_candidates",
    "count_bounded_monomials",
    "monomial_weight_sum",
]
