"""Hilbert-Mumford stability of hypersurface tuples and VGIT chambers.

Sign convention: ``mu(f, w) = -min_{a in supp f} <a, w>``. A tuple with
linearization ``gamma`` is unstable for the diagonal torus iff some
sum-zero ``w`` has ``sum_j gamma_j mu(f_j, w) < 0``; equivalently the point
``(sum_j gamma_j e_j / (n+1)) * (1, ..., 1)`` misses the weighted Minkowski
sum of the Newton polytopes. Both tests are run and must agree.

Torus verdicts say nothing about 1-PS outside the tested frames, so a
non-unstable verdict is always reported relative to those frames.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, gcd

import numpy as np

from . import kernels, qgeom
from .errors import ConsistencyError, InputError, ResourceCapError
from .forms import Form, OnePS, monomials, sum_zero_box, weights_of
from .qgeom import HalfSpace, fmt, fmt_vec, q, qvec

UNSTABLE = "unstable"
ON_WALL = "strictly-semistable-on-wall"
SEMISTABLE = "semistable-in-tested-frames"
STABLE = "stable-in-tested-frames"
_SEVERITY = {STABLE: 0, SEMISTABLE: 1, ON_WALL: 2, UNSTABLE: 3}

DEFAULT_CAP = 20000
DEFAULT_MAX_CELLS = 400
MAX_MINKOWSKI_POINTS = 200000


def default_cap() -> int:
    env = os.environ.get("KSTAB_CAP")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"KSTAB_CAP is not an integer: {env!r}") from exc
    return DEFAULT_CAP


# ---------------------------------------------------------------- weights

def hm_weight(f: Form, w) -> int:
    """``-min <a, w>`` over the support of ``f``."""
    w = weights_of(w)
    if len(w) != f.nvars:
        raise InputError("1-PS and form have different numbers of variables")
    return kernels.hm_weights(f.support, [w])[0]


def _scaled_weights(forms, gamma, ws):
    # integer totals over a common denominator of gamma
    if not isinstance(ws, np.ndarray):
        ws = [weights_of(w) for w in ws]
    gamma = [q(g) for g in gamma]
    den = 1
    for g in gamma:
        den = den * g.denominator // gcd(den, g.denominator)
    total = [0] * len(ws)
    for f, g in zip(forms, gamma):
        scale = g.numerator * (den // g.denominator)
        for i, m in enumerate(kernels.hm_weights(f.support, ws)):
            total[i] += scale * m
    return total, den


def combined_weights(forms, gamma, ws) -> list[Fraction]:
    """``sum_j gamma_j mu(f_j, w)`` for every ``w`` in ``ws``."""
    total, den = _scaled_weights(forms, gamma, ws)
    return [Fraction(x, den) for x in total]


def min_combined_weight(forms, gamma, ws) -> tuple[Fraction, list[int]]:
    """Minimum of :func:`combined_weights` and the indices attaining it."""
    total, den = _scaled_weights(forms, gamma, ws)
    low = min(total)
    return Fraction(low, den), [i for i, x in enumerate(total) if x == low]


# ------------------------------------------------------------- tuples

@dataclass(frozen=True)
class TupleConfig:
    n: int
    forms: tuple[Form, ...]
    linearization: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.forms:
            raise InputError("empty tuple")
        if len(self.linearization) != len(self.forms):
            raise InputError("one linearization weight per form")
        if any(g <= 0 for g in self.linearization):
            raise InputError("linearization weights must be positive")
        if any(f.nvars != self.n + 1 for f in self.forms):
            raise InputError(f"every form needs {self.n + 1} variables")

    @classmethod
    def make(cls, n, forms, linearization=None):
        forms = tuple(forms)
        if linearization is None:
            linearization = [1] * len(forms)
        return cls(int(n), forms, qvec(linearization))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.forms)

    def barycenter(self) -> tuple[Fraction, ...]:
        c = sum((g * f.degree for g, f in zip(self.linearization, self.forms)), Fraction(0))
        return tuple(c / (self.n + 1) for _ in range(self.n + 1))

    def to_json(self):
        return {"n": self.n, "forms": [f.to_json() for f in self.forms],
                "linearization": fmt_vec(self.linearization)}

    @classmethod
    def from_json(cls, d):
        return cls.make(d["n"], [Form.from_json(f) for f in d["forms"]], d.get("linearization"))


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    certificate: OnePS | None = None
    frames_tested: tuple = ()
    min_weight: Fraction | None = None
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def semistable(self) -> bool:
        return self.status != UNSTABLE

    def to_json(self):
        return {
            "status": self.status,
            "certificate": list(self.certificate.weights) if self.certificate else None,
            "frames_tested": [[fmt_vec(r) for r in m] for m in self.frames_tested],
            "min_weight": fmt(self.min_weight) if self.min_weight is not None else None,
            "checks": self.checks,
        }


# ------------------------------------------------------------ candidates

def _difference_directions(nvars, degrees):
    dirs = set()
    for e in sorted(set(degrees)):
        mons = monomials(nvars, e)
        for i, a in enumerate(mons):
            for b in mons[i + 1:]:
                d = qgeom.primitive([x - y for x, y in zip(a, b)])
                lead = next(x for x in d if x != 0)
                if lead < 0:
                    d = tuple(-x for x in d)
                dirs.add(d)
    return sorted(dirs)


def candidate_one_ps(n: int, degrees, cap: int | None = None) -> list[OnePS]:
    """Finite Weyl-normalized 1-PS candidates (entries sorted descending).

    Each is the primitive generator of the sum-zero vectors orthogonal to
    ``n - 1`` independent monomial differences, i.e. a possible facet
    normal of any weighted Minkowski sum of Newton polytopes of these
    degrees. ``w`` and ``-w`` are both kept.
    """
    if cap is None:
        cap = default_cap()
    if cap < 1:
        raise InputError("cap must be >= 1")
    if n < 1:
        raise InputError("n must be >= 1")
    degrees = tuple(int(e) for e in degrees)
    if not degrees or any(e < 1 for e in degrees):
        raise InputError("degrees must be positive")
    nvars = n + 1
    diffs = _difference_directions(nvars, degrees)
    from math import comb
    work = comb(len(diffs), nvars - 2) if nvars >= 2 else 1
    if work > 200 * cap:
        raise ResourceCapError("difference subsets to scan", work, 200 * cap)
    raw = kernels.nullspace_candidates(diffs, nvars)
    if len(raw) > cap:
        raise ResourceCapError("candidate 1-PS count", len(raw), cap)
    return [OnePS(tuple(w)) for w in raw]


def weyl_orbit(w) -> list[tuple[int, ...]]:
    return sorted(set(permutations(weights_of(w))), reverse=True)


def expanded_candidates(n, degrees, cap=None) -> list[tuple[int, ...]]:
    """Weyl orbits of :func:`candidate_one_ps`; memoized per input."""
    if cap is None:
        cap = default_cap()
    return list(_expanded(int(n), tuple(sorted(set(int(e) for e in degrees))), cap))


def candidate_array(n, degrees, cap=None) -> np.ndarray:
    """:func:`expanded_candidates` as a cached int64 array, rows in the same order."""
    if cap is None:
        cap = default_cap()
    return _expanded_array(int(n), tuple(sorted(set(int(e) for e in degrees))), cap)


@lru_cache(maxsize=256)
def _expanded_array(n, degrees, cap):
    arr = np.array(_expanded(n, degrees, cap), dtype=object)
    # candidate entries are bounded by Hadamard-size minors; keep int64 only when safe
    if arr.size and max(abs(int(x)) for x in arr.flat) < 2 ** 40:
        arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=256)
def _expanded(n, degrees, cap):
    out = set()
    for w in candidate_one_ps(n, degrees, cap):
        out.update(weyl_orbit(w))
    return tuple(sorted(out, reverse=True))


# ------------------------------------------------------- torus stability

def _newton_vertices(f: Form):
    sup = f.support
    if len(sup) <= 2:
        return list(sup)
    return [tuple(int(x) for x in v) for v in qgeom.from_points(sup).vertices]


def minkowski_points(t: TupleConfig):
    verts = [_newton_vertices(f) for f in t.forms]
    count = 1
    for v in verts:
        count *= len(v)
    if count > MAX_MINKOWSKI_POINTS:
        raise ResourceCapError("Minkowski sum points", count, MAX_MINKOWSKI_POINTS)
    pts = set()
    for choice in product(*verts):
        pts.add(tuple(sum((g * a[i] for g, a in zip(t.linearization, choice)), Fraction(0))
                      for i in range(t.n + 1)))
    return sorted(pts)


def _to_sum_zero(normal):
    m = len(normal)
    s = sum(normal, Fraction(0))
    w = [m * x - s for x in normal]
    return OnePS.make(qgeom.primitive(w))


def torus_semistable(t: TupleConfig, cap: int | None = None) -> StabilityVerdict:
    """Diagonal-torus verdict by barycenter membership, checked against the
    minimum combined weight over the candidate 1-PS."""
    gens = minkowski_points(t)
    bary = t.barycenter()
    mem = qgeom.hull_membership(bary, gens)
    cands = candidate_array(t.n, t.degrees, cap)
    min_w, argmins = min_combined_weight(t.forms, t.linearization, cands)
    if mem.inside != (min_w >= 0):
        raise ConsistencyError("barycenter membership and candidate minimum disagree",
                               {"inside": mem.inside, "min_weight": str(min_w),
                                "tuple": t.to_json()})
    checks = {"barycenter_inside": mem.inside, "candidate_min": fmt(min_w),
              "candidates": len(cands)}
    if not mem.inside:
        cert = _to_sum_zero(mem.normal)
        cw = combined_weights(t.forms, t.linearization, [cert])[0]
        if cw >= 0:
            raise ConsistencyError("separating normal is not a destabilizing 1-PS",
                                   {"normal": [str(x) for x in mem.normal], "weight": str(cw)})
        checks["certificate_weight"] = fmt(cw)
        return StabilityVerdict(UNSTABLE, cert, min_weight=min_w, checks=checks)
    interior = qgeom.in_relative_interior(bary, gens) and qgeom.affine_dim(gens) == t.n
    if interior != (min_w > 0):
        raise ConsistencyError("interior test and candidate minimum disagree",
                               {"interior": interior, "min_weight": str(min_w)})
    checks["interior"] = interior
    if interior:
        return StabilityVerdict(STABLE, min_weight=min_w, checks=checks)
    zero = [tuple(int(x) for x in cands[i]) for i in argmins]
    on_wall = any(hm_weight(f, w) != 0 for w in zero for f in t.forms)
    return StabilityVerdict(ON_WALL if on_wall else SEMISTABLE, min_weight=min_w, checks=checks)


def exhaustive_min_weight(t: TupleConfig, bound: int = 20) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum combined weight over every primitive sum-zero ``w`` in a box."""
    ws = sum_zero_box(t.n + 1, bound)
    weights = combined_weights(t.forms, t.linearization, ws)
    i = min(range(len(ws)), key=lambda j: (weights[j], ws[j]))
    return weights[i], ws[i]


# ----------------------------------------------------------------- frames

def _identity(m):
    return tuple(tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m))


def _frames(nvars, strategy, seed=None, count=8, matrices=None):
    if matrices is not None:
        out = []
        for M in matrices:
            M = tuple(tuple(q(x) for x in row) for row in M)
            if len(M) != nvars or any(len(r) != nvars for r in M):
                raise InputError("frame matrix has the wrong shape")
            if qgeom.rank(M) < nvars:
                raise InputError("singular substitution matrix")
            out.append(M)
        return out
    if strategy == "identity":
        return [_identity(nvars)]
    if strategy == "permutations":
        out = []
        for perm in permutations(range(nvars)):
            out.append(tuple(tuple(Fraction(int(perm[i] == j)) for j in range(nvars))
                             for i in range(nvars)))
        return out
    if strategy == "random":
        rng = random.Random(seed)
        out = [_identity(nvars)]
        while len(out) < count + 1:
            M = tuple(tuple(Fraction(rng.randint(-2, 2)) for _ in range(nvars))
                      for _ in range(nvars))
            if qgeom.rank(M) == nvars:
                out.append(M)
        return out
    raise InputError(f"unknown frame strategy {strategy!r}")


def git_check(t: TupleConfig, frames="identity", *, seed=None, count=8, cap=None) -> StabilityVerdict:
    """Torus verdicts in a list of coordinate frames.

    ``frames`` is ``"identity"``, ``"permutations"``, ``"random"`` (seeded)
    or an explicit list of substitution matrices. Stops at the first
    destabilizing frame; otherwise reports the weakest verdict seen.
    """
    if isinstance(frames, str):
        mats = _frames(t.n + 1, frames, seed=seed, count=count)
    else:
        mats = _frames(t.n + 1, None, matrices=frames)
    tested = []
    worst = None
    for M in mats:
        forms = tuple(f.substitute(M) for f in t.forms)
        v = torus_semistable(TupleConfig(t.n, forms, t.linearization), cap)
        tested.append(M)
        if v.status == UNSTABLE:
            return StabilityVerdict(UNSTABLE, v.certificate, tuple(tested), v.min_weight,
                                    dict(v.checks, frame_index=len(tested) - 1))
        if worst is None or _SEVERITY[v.status] > _SEVERITY[worst.status] or (
                _SEVERITY[v.status] == _SEVERITY[worst.status] and v.min_weight < worst.min_weight):
            worst = v
    return StabilityVerdict(worst.status, None, tuple(tested), worst.min_weight, worst.checks)


# ------------------------------------------------------------------- VGIT

@dataclass(frozen=True)
class WallWitness:
    wall: HalfSpace
    one_ps: OnePS
    exponents: tuple[tuple[int, ...], ...]
    realized: bool


@dataclass(frozen=True)
class VGITChambers:
    n: int
    degrees: tuple[int, ...]
    arrangement: qgeom.Arrangement
    witnesses: tuple[WallWitness, ...]

    @property
    def walls(self):
        return self.arrangement.walls

    @property
    def chambers(self):
        return self.arrangement.chambers

    def to_json(self):
        arr = self.arrangement
        return {
            "n": self.n,
            "degrees": list(self.degrees),
            "ambient": arr.ambient.to_json(),
            "walls": [w.to_json() for w in arr.walls],
            "cells": [{"signs": list(c.signs), "point": fmt_vec(c.point), "dim": c.dim}
                      for c in arr.cells],
            "chambers": len(arr.chambers),
            "walls_with_monomial_witness": sum(w.realized for w in self.witnesses),
            "witnesses": [{"wall": w.wall.to_json(), "one_ps": list(w.one_ps.weights),
                           "exponents": [list(e) for e in w.exponents], "realized": w.realized}
                          for w in self.witnesses],
        }


def linearization_simplex(k: int) -> qgeom.QPolytope:
    hs = [HalfSpace.make([int(i == j) for j in range(k)], 0) for i in range(k)]
    hs.append(HalfSpace.make([1] * k, 1, "="))
    return qgeom.from_halfspaces(hs, k)


def chamber_samples(cell: qgeom.Cell, count: int = 3):
    """``count`` distinct points in the open cell: its representative and
    midpoints towards closure vertices."""
    pts = [cell.point]
    for v in cell.vertices:
        p = tuple((a + b) / 2 for a, b in zip(cell.point, v))
        if p not in pts:
            pts.append(p)
        if len(pts) == count:
            break
    return pts


def vgit_chambers(n: int, degrees, cap: int | None = None, max_walls: int = 5000,
                  max_cells: int = DEFAULT_MAX_CELLS) -> VGITChambers:
    """Walls ``sum_j gamma_j m_j = 0`` on the open linearization simplex, one
    for every candidate ``w`` and every choice of attainable values
    ``m_j = -<a_j, w>`` with mixed signs."""
    degrees = tuple(int(e) for e in degrees)
    k = len(degrees)
    if k < 2:
        raise InputError("VGIT chambers need at least two forms")
    cands = candidate_one_ps(n, degrees, cap)
    found = {}
    for w in cands:
        options = []
        for e in degrees:
            vals = {}
            for a in monomials(n + 1, e):
                vals.setdefault(-sum(x * y for x, y in zip(a, w.weights)), a)
            options.append(sorted(vals.items()))
        for combo in product(*options):
            m = [v for v, _ in combo]
            if not (any(x > 0 for x in m) and any(x < 0 for x in m)):
                continue
            wall = HalfSpace.make(m, 0, "=")
            if wall not in found:
                found[wall] = (w, tuple(a for _, a in combo))
                if len(found) > max_walls:
                    raise ResourceCapError("VGIT walls", len(found), max_walls)
    walls = sorted(found)
    # worst-case cell count of an arrangement in dimension k - 1
    bound = sum(comb(len(walls), i) for i in range(k))
    if bound > max_cells:
        raise ResourceCapError("VGIT arrangement cells (upper bound)", bound, max_cells)
    arr = qgeom.arrangement_chambers(linearization_simplex(k), walls)
    witnesses = []
    for i, wall in enumerate(arr.walls):
        w, exps = found[wall]
        witnesses.append(WallWitness(wall, w, exps, _realized(n, arr, i, exps)))
    return VGITChambers(n, degrees, arr, tuple(witnesses))


def _realized(n, arr, i, exps):
    # the wall is realized when the witness monomials change verdict across it
    forms = [Form.monomial(e) for e in exps]
    cands = candidate_array(n, [f.degree for f in forms])

    def semistable(gamma):
        return min_combined_weight(forms, gamma, cands)[0] >= 0

    wall_cells = [c for c in arr.cells if c.signs[i] == 0 and c.dim == arr.ambient.dim - 1]
    for c in wall_cells:
        on = semistable(c.point)
        for ch in arr.chambers:
            diff = [j for j, (a, b) in enumerate(zip(c.signs, ch.signs)) if a != b]
            if diff == [i] and semistable(ch.point) != on:
                return True
    return False
