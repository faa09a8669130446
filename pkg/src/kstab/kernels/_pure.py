"""Pure-Python versions of the integer kernels.

Every function here has a twin in ``_core.pyx`` with the same signature and
the same result. These are the reference; the compiled ones only add speed.
"""
from itertools import combinations
from math import gcd


def hm_weights(support, ws):
    """Return ``[-min_{a in support} <a, w> for w in ws]``."""
    out = []
    for w in ws:
        best = None
        for a in support:
            s = 0
            for ai, wi in zip(a, w):
                s += ai * wi
            if best is None or s < best:
                best = s
        out.append(-best)
    return out


def _det(mat):
    # Bareiss fraction-free elimination; exact on Python ints.
    m = [list(r) for r in mat]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for r in range(k + 1, size):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


def _kernel_vector(rows, nvars):
    vec = []
    for i in range(nvars):
        minor = [r[:i] + r[i + 1:] for r in rows]
        d = _det(minor)
        vec.append(d if i % 2 == 0 else -d)
    return vec


def nullspace_candidates(diffs, nvars):
    """Sorted-descending primitive generators of ``{w : sum w = 0, <d, w> = 0}``.

    One generator is taken per ``(nvars - 2)``-subset of ``diffs`` whose
    null space (together with the all-ones row) is a line. Both ``v`` and
    ``-v`` are returned, each sorted in descending order.
    """
    ones = [1] * nvars
    found = set()
    for subset in combinations(diffs, nvars - 2):
        rows = [ones] + [list(d) for d in subset]
        v = _kernel_vector(rows, nvars)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            continue
        v = [x // g for x in v]
        found.add(tuple(sorted(v, reverse=True)))
        found.add(tuple(sorted((-x for x in v), reverse=True)))
    return sorted(found, reverse=True)


def count_bounded_monomials(nvars, m, bounds):
    """Number of exponent vectors of total degree ``m`` in ``nvars`` variables
    with ``a[i] < bounds[i]`` wherever ``bounds[i] > 0``.

    Dynamic programming over the variables, one at a time.
    """
    if m < 0:
        return 0
    counts = [1] + [0] * m
    for i in range(nvars):
        cap = bounds[i] if i < len(bounds) and bounds[i] > 0 else m + 1
        nxt = [0] * (m + 1)
        for total in range(m + 1):
            c = counts[total]
            if not c:
                continue
            for a in range(min(cap, m + 1 - total)):
                nxt[total + a] += c
        counts = nxt
    return counts[m]


def monomial_weight_sum(m, w):
    """``sum_{|a| = m} <a, w>`` over all degree-``m`` exponent vectors."""
    if m < 0:
        return 0
    # (count, weight) of partial exponent vectors, indexed by partial degree
    count = [1] + [0] * m
    weight = [0] * (m + 1)
    for wi in w:
        ncount = [0] * (m + 1)
        nweight = [0] * (m + 1)
        for total in range(m + 1):
            c = count[total]
            if not c:
                continue
            s = weight[total]
            for a in range(m + 1 - total):
                ncount[total + a] += c
                nweight[total + a] += s + c * a * wi
        count, weight = ncount, nweight
    return weight[m]
