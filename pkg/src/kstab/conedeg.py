"""Hilbert-function bookkeeping for projective-cone degenerations.

Degenerating ``X`` to the projective cone over a divisor ``S`` replaces the
section ring of ``X`` by the graded ring of ``S`` with an extra variable, so
in each degree the dimension splits as a sum of restrictions
``H^0(S, (m - i) S|_S)``. Only these dimension identities are checked here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .errors import ConsistencyError, InputError


def binom(a: int, b: int) -> int:
    """``C(a, b)``, zero whenever ``a < b`` or ``a < 0``."""
    if b < 0 or a < 0 or a < b:
        return 0
    from math import comb
    return comb(a, b)


def ci_hilbert(n: int, degrees, m: int) -> int:
    """``h^0(O_Y(m))`` for a complete intersection ``Y`` of the given degrees in ``P^n``.

    Koszul inclusion-exclusion; ``0`` for ``m < 0``.
    """
    if m < 0:
        return 0
    degrees = tuple(int(d) for d in degrees)
    total = 0
    for size in range(len(degrees) + 1):
        sign = -1 if size % 2 else 1
        for sub in combinations(degrees, size):
            total += sign * binom(m - sum(sub) + n, n)
    return total


def ci_hilbert_bruteforce(n: int, degrees, m: int) -> int:
    """Count monomials of degree ``m`` in ``n + 1`` variables not divisible by
    any ``x_j^{d_j}``: a basis of the quotient by the monomial regular sequence."""
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) > n + 1:
        raise InputError("a regular sequence has at most n + 1 members")
    if m < 0:
        return 0
    return kernels.count_bounded_monomials(n + 1, m, list(degrees))


@dataclass(frozen=True)
class HilbertData:
    n: int
    degrees: tuple[int, ...]
    values: dict = field(default_factory=dict)

    @classmethod
    def compute(cls, n, degrees, ms):
        degrees = tuple(int(d) for d in degrees)
        return cls(n, degrees, {m: ci_hilbert(n, degrees, m) for m in ms})


@dataclass(frozen=True)
class ConeReport:
    n: int
    d: int
    m_max: int
    checks: int
    checks_passed: bool
    cone_hilbert: tuple[int, ...]

    def to_json(self):
        return {"n": self.n, "d": self.d, "m_max": self.m_max, "checks": self.checks,
                "checks_passed": self.checks_passed, "cone_hilbert": list(self.cone_hilbert)}


def cone_quotient_check(n: int, d: int, m_max: int) -> ConeReport:
    """Check ``h^0(mS - iS) - h^0(mS - (i+1)S) = h^0(S, (m - i) S|_S)`` for a
    degree ``d`` hypersurface ``S`` in ``P^n`` and ``0 <= i <= m <= m_max``.

    Also returns the graded dimensions of the cone over ``S``.
    """
    if not 1 <= d <= n + 1:
        raise InputError(f"need 1 <= d <= n + 1, got d = {d}")
    if m_max < 1:
        raise InputError("m_max must be >= 1")
    checks = 0
    for m in range(m_max + 1):
        for i in range(m + 1):
            lhs = binom((m - i) * d + n, n) - binom((m - i - 1) * d + n, n)
            rhs = ci_hilbert(n, (d,), (m - i) * d)
            checks += 1
            if lhs != rhs:
                raise ConsistencyError("graded quotient identity failed",
                                       {"n": n, "d": d, "m": m, "i": i, "lhs": lhs, "rhs": rhs})
    cone = []
    for m in range(m_max + 1):
        total = sum(ci_hilbert(n, (d,), (m - i) * d) for i in range(m + 1))
        # the filtration is exhaustive: the cone has the same dimension as X
        if total != binom(m * d + n, n):
            raise ConsistencyError("cone dimensions do not add up",
                                   {"n": n, "d": d, "m": m, "cone": total})
        cone.append(total)
    return ConeReport(n, d, m_max, checks, True, tuple(cone))
