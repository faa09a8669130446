"""Closed-form K-stability invariants of pairs ``(P^n, sum_j x_j S_{d_j})``.

For a general hypersurface ``S_d`` and boundary coefficients ``x``, the
log anticanonical class is ``O(r)`` with ``r = n + 1 - sum_j x_j d_j``.
The volume of ``O(r) - t S_{d_i}`` is ``(r - t d_i)^n`` up to ``t = r / d_i``,
which is all the S-invariant needs.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import qgeom
from .errors import ConsistencyError, HypothesisError, InputError, NotLogFanoError
from .qgeom import HalfSpace, QPolytope, q, qvec

ASSUMPTION = (
    "Kss polytope computed formally from the boundary-divisor beta inequalities; "
    "assumes the complete intersections of general members are K-semistable (not verified)"
)


@dataclass(frozen=True)
class PairConfig:
    n: int
    degrees: tuple[int, ...]
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        if len(self.degrees) < 1:
            raise InputError("need at least one hypersurface")
        if any(not isinstance(d, int) or d < 1 for d in self.degrees):
            raise InputError(f"degrees must be positive integers: {self.degrees!r}")
        if len(self.coefficients) != len(self.degrees):
            raise InputError("one coefficient per degree is required")
        if any(not (0 <= x < 1) for x in self.coefficients):
            raise InputError("coefficients must lie in [0, 1)")

    @classmethod
    def make(cls, n, degrees, coefficients=None):
        degrees = tuple(int(d) for d in degrees)
        if coefficients is None:
            coefficients = [0] * len(degrees)
        return cls(int(n), degrees, qvec(coefficients))

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def r(self) -> Fraction:
        """``-(K + boundary) = O(r)``."""
        return self.n + 1 - sum(x * d for x, d in zip(self.coefficients, self.degrees))

    def to_json(self):
        return {"n": self.n, "degrees": list(self.degrees),
                "coefficients": qgeom.fmt_vec(self.coefficients)}

    @classmethod
    def from_json(cls, d):
        return cls.make(d["n"], d["degrees"], d.get("coefficients"))


@dataclass(frozen=True)
class AVector:
    values: tuple[Fraction, ...]
    extremal: bool


@dataclass(frozen=True)
class ConeChain:
    radii: tuple[Fraction, ...]
    checks: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return all(self.checks)


def _check_index(cfg, i):
    if not 1 <= i <= cfg.k:
        raise InputError(f"index {i} out of range 1..{cfg.k}")


def _integrate_poly(coeffs, upper):
    """``int_0^upper sum_j coeffs[j] t^j dt``."""
    return sum((c * upper ** (j + 1) / (j + 1) for j, c in enumerate(coeffs)), Fraction(0))


@lru_cache(maxsize=None)
def _unit_integral(n: int, d: int) -> Fraction:
    """``int_0^{1/d} (1 - d u)^n du``, expanded and integrated term by term."""
    coeffs = [comb(n, j) * (-d) ** j for j in range(n + 1)]
    return _integrate_poly(coeffs, Fraction(1, d))


def s_invariant(cfg: PairConfig, i: int) -> Fraction:
    """S-invariant of the boundary divisor ``S_{d_i}`` (1-based ``i``).

    Integrates ``(r - t d_i)^n / r^n`` over ``[0, r/d_i]``; the substitution
    ``t = r u`` leaves ``r`` times an integral depending only on ``(n, d_i)``.
    """
    _check_index(cfg, i)
    r = cfg.r
    if r <= 0:
        raise NotLogFanoError(f"not log Fano: r = {r} <= 0")
    return r * _unit_integral(cfg.n, cfg.degrees[i - 1])


def s_invariant_closed(cfg: PairConfig, i: int) -> Fraction:
    _check_index(cfg, i)
    if cfg.r <= 0:
        raise NotLogFanoError(f"not log Fano: r = {cfg.r} <= 0")
    return cfg.r / ((cfg.n + 1) * cfg.degrees[i - 1])


def beta(cfg: PairConfig, i: int) -> Fraction:
    """``A - S`` for ``S_{d_i}``; its log discrepancy is ``1 - x_i``."""
    return (1 - cfg.coefficients[i - 1]) - s_invariant(cfg, i)


def beta_linear_form(n: int, degrees, i: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """``beta_i(x) = c . x + c0`` as ``(c, c0)``; valid wherever ``r > 0``."""
    degrees = tuple(degrees)
    di = degrees[i - 1]
    c = [Fraction(dj, (n + 1) * di) for dj in degrees]
    c[i - 1] -= 1
    return tuple(c), 1 - Fraction(1, di)


def beta_affine_form_by_integration(n: int, degrees, i: int):
    """Same ``(c, c0)`` as :func:`beta_linear_form`, read off from exact
    evaluations of :func:`beta` (which integrates). ``beta_i`` is affine in
    ``x``, so one evaluation per coordinate direction recovers it."""
    degrees = tuple(degrees)
    k = len(degrees)
    zero = PairConfig.make(n, degrees)
    c0 = beta(zero, i)
    step = Fraction(1, 2)
    c = []
    for j in range(k):
        x = [Fraction(0)] * k
        x[j] = step
        cfg = PairConfig(n, degrees, tuple(x))
        c.append((beta(cfg, i) - c0) / step)
    return tuple(c), c0


def _check_hypothesis(n, degrees):
    if not degrees:
        raise InputError("need at least one degree")
    if any(d < 1 for d in degrees):
        raise InputError("degrees must be positive")
    if sum(degrees) >= n + 1:
        raise HypothesisError(f"need sum(degrees) < n + 1, got {sum(degrees)} >= {n + 1}")


def a_vector_formula(n, degrees) -> tuple[Fraction, ...]:
    k = len(degrees)
    sd = sum(degrees)
    return tuple(Fraction(sd + (n - k + 1) * dj - (n + 1), (n - k + 1) * dj) for dj in degrees)


@lru_cache(maxsize=1024)
def _beta_zero_by_integration(n, degrees):
    A, b = [], []
    for i in range(1, len(degrees) + 1):
        c, c0 = beta_affine_form_by_integration(n, degrees, i)
        A.append(list(c))
        b.append(-c0)
    return qgeom.solve_linear_system(A, b)


def a_vector(n: int, degrees, *, check_extremal: bool = True) -> AVector:
    """The coefficient vector where every boundary beta vanishes.

    Computed twice, from the closed formula and by solving the linear
    system ``beta_i(x) = 0``; the two must agree exactly.
    """
    degrees = tuple(int(d) for d in degrees)
    _check_hypothesis(n, degrees)
    if all(d == 1 for d in degrees):
        warnings.warn("all degrees equal 1: the a-vector is zero", stacklevel=2)
    formula = a_vector_formula(n, degrees)
    solved = _beta_zero_by_integration(n, degrees)
    if solved != formula:
        raise ConsistencyError("a-vector formula disagrees with the beta = 0 system",
                               {"formula": formula, "solved": solved})
    extremal = False
    if check_extremal and n >= 2 and all(d <= n + 1 for d in degrees):
        extremal = is_vertex(_constraints_cached(n, degrees), formula)
    return AVector(formula, extremal)


def is_vertex(halfspaces, x) -> bool:
    """A feasible point is a vertex iff its tight constraints have full rank."""
    if not all(h.satisfied(x) for h in halfspaces):
        return False
    tight = [list(h.normal) for h in halfspaces if h.value(x) == 0]
    return qgeom.rank(tight) == len(x)


def kss_polytope(n: int, degrees) -> QPolytope:
    """Box, boundary-beta and log-Fano constraints, in both representations."""
    degrees = tuple(int(d) for d in degrees)
    if n < 2:
        raise InputError("need n >= 2")
    if not degrees or any(d < 1 or d > n + 1 for d in degrees):
        raise InputError(f"need 1 <= d_j <= n + 1, got {degrees}")
    hs = kss_constraints(n, degrees)
    return qgeom.from_halfspaces(hs, len(degrees))


@lru_cache(maxsize=1024)
def _constraints_cached(n, degrees):
    return tuple(kss_constraints(n, degrees))


def kss_constraints(n: int, degrees) -> list[HalfSpace]:
    """The raw inequality list before redundancy elimination."""
    degrees = tuple(degrees)
    k = len(degrees)
    out = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        out.append(HalfSpace.make(e, 0))
        out.append(HalfSpace.make([-x for x in e], -1))
    for i in range(1, k + 1):
        c, c0 = beta_linear_form(n, degrees, i)
        out.append(HalfSpace.make(c, -c0))
    out.append(HalfSpace.make([-d for d in degrees], -(n + 1)))
    return out


def cone_chain(n: int, degrees) -> ConeChain:
    """Radii of the successive projective-cone degenerations.

    Step ``i`` lives on the ``(n - i)``-dimensional intersection of the first
    ``i - 1`` hypersurfaces, polarized by ``O(d_i)``.
    """
    degrees = tuple(int(d) for d in degrees)
    _check_hypothesis(n, degrees)
    a = a_vector_formula(n, degrees)
    k = len(degrees)
    radii, checks = [], []
    for i in range(1, k + 1):
        rest = sum((a[j] * degrees[j] for j in range(i, k)), Fraction(0))
        r = (n + 1 - sum(degrees[:i]) - rest) / degrees[i - 1]
        dim_v = n - i
        radii.append(r)
        checks.append(a[i - 1] == 1 - r / (dim_v + 1) and 0 < r <= dim_v + 1)
    return ConeChain(tuple(radii), tuple(checks))
