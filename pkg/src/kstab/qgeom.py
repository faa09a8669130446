"""Exact rational linear algebra and small-dimensional convex geometry.

Everything is over :class:`fractions.Fraction`; there is no floating point
in this module. Polytopes are converted between H- and V-representation
with the double description method, hull membership is decided by an exact
two-phase simplex that returns a Farkas certificate on failure, and
hyperplane arrangements are split cell by cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import ConsistencyError, InputError, ResourceCapError

Q = Fraction
QVec = tuple  # tuple[Fraction, ...]

MAX_DIM = 6


# ---------------------------------------------------------------- rationals

def q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not an exact rational: {x!r}")


def qvec(xs) -> QVec:
    return tuple(q(x) for x in xs)


def fmt(x) -> str:
    return str(Fraction(x))


def fmt_vec(xs) -> list[str]:
    return [fmt(x) for x in xs]


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(v) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to a primitive integer one."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------- linear systems

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    rows = [r for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : rows x = 0}``, one vector per free column."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


class UnderdeterminedSystem(InputError):
    """Consistent system whose solution set is not a single point."""

    def __init__(self, particular, kernel):
        super().__init__(f"underdetermined system: {len(kernel)}-dimensional solution set")
        self.particular = particular
        self.kernel = kernel


def solve_linear_system(A, b) -> QVec | None:
    """Exact solution of ``A x = b``.

    Returns the unique solution, ``None`` if the system is inconsistent, and
    raises :class:`UnderdeterminedSystem` if the solution is not unique.
    Overdetermined but consistent systems are fine.
    """
    A = [[q(x) for x in row] for row in A]
    b = qvec(b)
    if len(A) != len(b):
        raise InputError(f"A has {len(A)} rows but b has {len(b)} entries")
    if not A:
        raise InputError("empty system")
    ncols = len(A[0])
    if any(len(r) != ncols for r in A):
        raise InputError("ragged matrix")
    red, piv = rref([row + [bi] for row, bi in zip(A, b)])
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, piv):
        x[pc] = row[ncols]
    if len(piv) < ncols:
        raise UnderdeterminedSystem(tuple(x), nullspace(A, ncols))
    return tuple(x)


# ----------------------------------------------------------- half-spaces

@dataclass(frozen=True, order=True)
class HalfSpace:
    """``normal . x >= offset`` (``rel=">="``) or ``normal . x == offset``."""

    normal: QVec
    offset: Fraction
    rel: str = ">="

    def __post_init__(self):
        if self.rel not in (">=", "="):
            raise InputError(f"bad relation {self.rel!r}")
        if all(x == 0 for x in self.normal):
            raise InputError("half-space with zero normal")

    @classmethod
    def make(cls, normal, offset, rel=">="):
        """Canonical form: primitive integer normal; equalities get a positive
        leading entry."""
        normal = qvec(normal)
        offset = q(offset)
        if all(x == 0 for x in normal):
            raise InputError("half-space with zero normal")
        prim = primitive(normal)
        lead = next(i for i, x in enumerate(normal) if x != 0)
        scale = Fraction(prim[lead]) / normal[lead]
        if rel == "=" and prim[lead] < 0:
            prim = tuple(-x for x in prim)
            scale = -scale
        return cls(tuple(Fraction(x) for x in prim), offset * scale, rel)

    def value(self, x) -> Fraction:
        return dot(self.normal, x) - self.offset

    def satisfied(self, x) -> bool:
        v = self.value(x)
        return v == 0 if self.rel == "=" else v >= 0

    def to_json(self):
        return {"normal": fmt_vec(self.normal), "offset": fmt(self.offset), "rel": self.rel}

    @classmethod
    def from_json(cls, d):
        return cls.make(d["normal"], d["offset"], d.get("rel", ">="))


@dataclass(frozen=True)
class QPolytope:
    """Exact polyhedron. Either representation may be absent until
    :func:`polytope_convert` fills it in. ``dim`` is -1 when empty."""

    ambient_dim: int
    hrep: tuple[HalfSpace, ...] | None = None
    vertices: tuple[QVec, ...] | None = None
    rays: tuple[QVec, ...] = ()
    dim: int | None = None

    @property
    def is_empty(self) -> bool:
        return self.dim == -1

    def contains(self, x) -> bool:
        if self.hrep is None:
            raise InputError("polytope has no H-representation yet")
        x = qvec(x)
        return all(h.satisfied(x) for h in self.hrep)

    def to_json(self):
        out = {}
        if self.hrep is not None:
            out["hrep"] = [h.to_json() for h in self.hrep]
        if self.vertices is not None:
            out["vrep"] = [fmt_vec(v) for v in self.vertices]
        if self.rays:
            out["rays"] = [fmt_vec(r) for r in self.rays]
        out["dim"] = self.dim
        return out

    @classmethod
    def from_json(cls, d, ambient_dim=None):
        hrep = tuple(HalfSpace.from_json(h) for h in d["hrep"]) if "hrep" in d else None
        verts = tuple(qvec(v) for v in d["vrep"]) if "vrep" in d else None
        rays = tuple(qvec(r) for r in d.get("rays", ()))
        if ambient_dim is None:
            if hrep:
                ambient_dim = len(hrep[0].normal)
            elif verts:
                ambient_dim = len(verts[0])
            else:
                raise InputError("cannot infer ambient dimension")
        return cls(ambient_dim, hrep, verts, rays, d.get("dim"))


def from_halfspaces(halfspaces: Iterable[HalfSpace], ambient_dim: int) -> QPolytope:
    return polytope_convert(QPolytope(ambient_dim, hrep=tuple(halfspaces)), "h->v")


def from_points(points, rays=(), ambient_dim=None) -> QPolytope:
    points = tuple(qvec(p) for p in points)
    if ambient_dim is None:
        ambient_dim = len(points[0])
    return polytope_convert(
        QPolytope(ambient_dim, vertices=points, rays=tuple(qvec(r) for r in rays)), "v->h"
    )


# ---------------------------------------------------- double description

def _int_row(row):
    return primitive(row) if any(x != 0 for x in row) else tuple(0 for _ in row)


def _extreme_rays(rows, D):
    """Extreme rays of the pointed cone ``{y in Q^D : r . y >= 0 for r in rows}``.

    Rows must have rank ``D``. Rays come back as primitive integer tuples.
    """
    rows = [_int_row(r) for r in rows]
    rows = [r for r in rows if any(r)]
    basis = []
    for i, r in enumerate(rows):
        if len(basis) == D:
            break
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
    if len(basis) < D:
        raise InputError("cone is not pointed (polyhedron contains a line)")
    # columns of the inverse of the basis block
    M = [list(rows[i]) for i in basis]
    rays = []
    for k in range(D):
        e = [Fraction(int(j == k)) for j in range(D)]
        col = solve_linear_system(M, e)
        rays.append(primitive(col))
    zero_sets = []
    for ray in rays:
        z = 0
        for bit, i in enumerate(basis):
            if sum(a * b for a, b in zip(rows[i], ray)) == 0:
                z |= 1 << i
        zero_sets.append(z)
    done = set(basis)
    for i, h in enumerate(rows):
        if i in done:
            continue
        vals = [sum(a * b for a, b in zip(h, ray)) for ray in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zer = [j for j, v in enumerate(vals) if v == 0]
        new_rays = [rays[j] for j in pos] + [rays[j] for j in zer]
        new_zs = [zero_sets[j] for j in pos] + [zero_sets[j] | (1 << i) for j in zer]
        for p in pos:
            for n_ in neg:
                common = zero_sets[p] & zero_sets[n_]
                if bin(common).count("1") < D - 2:
                    continue
                if any(
                    j != p and j != n_ and zero_sets[j] & common == common
                    for j in range(len(rays))
                ):
                    continue
                vp, vn = vals[p], vals[n_]
                combo = [vp * a - vn * b for a, b in zip(rays[n_], rays[p])]
                new_rays.append(primitive(combo))
                new_zs.append(common | (1 << i))
        rays, zero_sets = new_rays, new_zs
        done.add(i)
    # dedupe (distinct extreme rays are never parallel)
    seen = {}
    for r in rays:
        seen.setdefault(r, None)
    return sorted(seen)


def _affine_frame(equalities, ambient_dim):
    """Parametrize ``{x : E x = e}`` by its free coordinates.

    Returns ``(x0, free, directions)`` with ``x = x0 + sum t_f * directions[f]``,
    or ``None`` when the equalities are inconsistent.
    """
    if not equalities:
        eye = [tuple(Fraction(int(i == j)) for j in range(ambient_dim)) for i in range(ambient_dim)]
        return tuple(Fraction(0) for _ in range(ambient_dim)), list(range(ambient_dim)), eye
    rows = [list(a) + [b] for a, b in equalities]
    red, piv = rref(rows)
    if ambient_dim in piv:
        return None
    free = [c for c in range(ambient_dim) if c not in piv]
    x0 = [Fraction(0)] * ambient_dim
    for row, pc in zip(red, piv):
        x0[pc] = row[ambient_dim]
    dirs = []
    for f in free:
        v = [Fraction(0)] * ambient_dim
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        dirs.append(tuple(v))
    return tuple(x0), free, dirs


def _canonical_equalities(rows_with_rhs, ambient_dim):
    if not rows_with_rhs:
        return []
    red, piv = rref([list(a) + [b] for a, b in rows_with_rhs])
    out = []
    for row in red:
        out.append(HalfSpace.make(row[:ambient_dim], row[ambient_dim], "="))
    return out


def _h_to_v(p: QPolytope) -> QPolytope:
    d = p.ambient_dim
    if d > MAX_DIM:
        raise ResourceCapError("ambient dimension", d, MAX_DIM)
    eqs = [(h.normal, h.offset) for h in p.hrep if h.rel == "="]
    ineqs = [(h.normal, h.offset) for h in p.hrep if h.rel == ">="]
    frame = _affine_frame(eqs, d)
    empty = QPolytope(d, p.hrep, (), (), -1)
    if frame is None:
        return empty
    x0, free, dirs = frame
    dd = len(free)
    reduced = []
    for a, b in ineqs:
        a2 = tuple(dot(a, v) for v in dirs)
        b2 = b - dot(a, x0)
        if all(x == 0 for x in a2):
            if b2 > 0:
                return empty
            continue
        reduced.append((a2, b2))
    if dd == 0:
        return _v_to_h(QPolytope(d, vertices=(x0,)))
    hom = [(-b2,) + a2 for a2, b2 in reduced]
    hom.append((Fraction(1),) + tuple(Fraction(0) for _ in range(dd)))
    if rank(hom) < dd + 1:
        raise InputError("polyhedron contains a line; only pointed polyhedra are supported")
    rays = _extreme_rays(hom, dd + 1)
    verts, recs = [], []
    for r in rays:
        s, t = r[0], r[1:]
        if s > 0:
            verts.append(tuple(x0[i] + sum((Fraction(t[j], s) * dirs[j][i] for j in range(dd)),
                                           Fraction(0)) for i in range(d)))
        else:
            recs.append(tuple(sum((Fraction(t[j]) * dirs[j][i] for j in range(dd)), Fraction(0))
                              for i in range(d)))
    if not verts:
        return empty
    return _v_to_h(QPolytope(d, vertices=tuple(verts), rays=tuple(recs)))


def _v_to_h(p: QPolytope) -> QPolytope:
    d = p.ambient_dim
    if d > MAX_DIM:
        raise ResourceCapError("ambient dimension", d, MAX_DIM)
    pts = [qvec(v) for v in p.vertices]
    rays = [qvec(r) for r in p.rays if any(x != 0 for x in r)]
    if not pts:
        return QPolytope(d, (), (), (), -1)
    # affine hull: c0 + c.x = 0 on points, c.r = 0 on rays
    M = [[Fraction(1)] + list(v) for v in pts] + [[Fraction(0)] + list(r) for r in rays]
    ker = nullspace(M, d + 1)
    eqs = _canonical_equalities([(c[1:], -c[0]) for c in ker], d)
    frame = _affine_frame([(h.normal, h.offset) for h in eqs], d)
    x0, free, dirs = frame
    dd = len(free)
    tp = [tuple(v[f] for f in free) for v in pts]
    tr = [tuple(r[f] for f in free) for r in rays]
    facets = []
    if dd > 0:
        rows = [(Fraction(-1),) + t for t in tp] + [(Fraction(0),) + t for t in tr]
        for ray in _extreme_rays(rows, dd + 1):
            b, a = ray[0], ray[1:]
            if all(x == 0 for x in a):
                continue
            normal = [Fraction(0)] * d
            for j, f in enumerate(free):
                normal[f] = Fraction(a[j])
            facets.append(HalfSpace.make(normal, b, ">="))
    facets = sorted(set(facets))
    # keep only extreme points / rays
    fac_t = [tuple(h.normal[f] for f in free) for h in facets]
    keep_v = []
    for v, t in zip(pts, tp):
        tight = [a for a, h in zip(fac_t, facets) if h.value(v) == 0]
        if dd == 0 or rank(tight) == dd:
            keep_v.append(v)
    keep_r = []
    for r, t in zip(rays, tr):
        tight = [a for a in fac_t if dot(a, t) == 0]
        if rank(tight) == dd - 1:
            keep_r.append(tuple(Fraction(x) for x in primitive(r)))
    verts = tuple(sorted(set(keep_v)))
    return QPolytope(d, tuple(eqs) + tuple(facets), verts, tuple(sorted(set(keep_r))), dd)


def polytope_convert(p: QPolytope, direction: str) -> QPolytope:
    """Fill in the other representation. ``direction`` is ``"h->v"`` or
    ``"v->h"``; the result carries both, canonically ordered and without
    redundant half-spaces or points. An empty polytope has ``dim == -1``."""
    direction = direction.replace("→", "->")
    if direction == "h->v":
        if p.hrep is None:
            raise InputError("no H-representation to convert")
        return _h_to_v(p)
    if direction == "v->h":
        if p.vertices is None:
            raise InputError("no V-representation to convert")
        return _v_to_h(p)
    raise InputError(f"unknown direction {direction!r}")


def same_point_set(p: QPolytope, r: QPolytope) -> bool:
    """Mutual satisfaction check between two fully converted polytopes."""
    if p.is_empty or r.is_empty:
        return p.is_empty and r.is_empty
    return (all(r.contains(v) for v in p.vertices) and all(p.contains(v) for v in r.vertices)
            and set(p.rays) == set(r.rays))


def affine_dim(points) -> int:
    pts = [qvec(p) for p in points]
    if not pts:
        return -1
    base = pts[0]
    return rank([[a - b for a, b in zip(v, base)] for v in pts[1:]]) if len(pts) > 1 else 0


# -------------------------------------------------------- exact simplex

def _pivot(T, r, c):
    pv = T[r][c]
    T[r] = [x / pv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]


def _run(T, basis, cost_row, allowed):
    """Bland's rule on tableau ``T`` (last row is the objective row)."""
    m = len(T) - 1
    while True:
        enter = next((j for j in allowed if T[cost_row][j] < 0), None)
        if enter is None:
            return "optimal"
        best, leave = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, leave, enter)
        basis[leave] = enter


@dataclass
class LPResult:
    status: str  # optimal | infeasible | unbounded
    x: tuple | None = None
    value: Fraction | None = None
    farkas: tuple | None = None  # y with y.A <= 0, y.b > 0 when infeasible


def linprog(c, A, b) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    A = [[q(x) for x in row] for row in A]
    b = list(qvec(b))
    c = list(qvec(c))
    m, nv = len(A), len(c)
    signs = []
    for i in range(m):
        s = -1 if b[i] < 0 else 1
        signs.append(s)
        if s < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # columns: original | artificial | rhs
    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    obj = [Fraction(0)] * (nv + m + 1)
    for i in range(m):
        obj = [o - x for o, x in zip(obj, T[i])]
    for j in range(nv, nv + m):
        obj[j] = Fraction(0)
    T.append(obj)
    basis = list(range(nv, nv + m))
    _run(T, basis, m, range(nv + m))
    if T[m][-1] != 0:
        # reduced cost of artificial i is 1 - y_i
        y = tuple(1 - T[m][nv + i] for i in range(m))
        y = tuple(yi * s for yi, s in zip(y, signs))
        return LPResult("infeasible", farkas=y)
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    keep = [i for i in range(m) if basis[i] < nv]
    T2 = [T[i][:nv] + [T[i][-1]] for i in keep]
    basis2 = [basis[i] for i in keep]
    obj = c + [Fraction(0)]
    for i, bi in enumerate(basis2):
        if obj[bi] != 0:
            f = obj[bi]
            obj = [o - f * x for o, x in zip(obj, T2[i])]
    T2.append(obj)
    status = _run(T2, basis2, len(T2) - 1, range(nv))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * nv
    for i, bi in enumerate(basis2):
        x[bi] = T2[i][-1]
    return LPResult("optimal", tuple(x), dot(c, x))


# ------------------------------------------------------- hull membership

@dataclass(frozen=True)
class Membership:
    inside: bool
    coefficients: tuple | None = None  # convex weights on the generators
    normal: tuple | None = None  # <g, normal> > <q, normal> for every g


def hull_membership(point, generators) -> Membership:
    """Decide ``point in conv(generators)`` with a self-checked certificate."""
    qpt = qvec(point)
    gens = [qvec(g) for g in generators]
    if not gens:
        raise InputError("no generators")
    if any(len(g) != len(qpt) for g in gens):
        raise InputError("dimension mismatch between point and generators")
    for i, g in enumerate(gens):
        if g == qpt:
            coeffs = tuple(Fraction(int(j == i)) for j in range(len(gens)))
            return Membership(True, coeffs)
    d = len(qpt)
    A = [[g[i] for g in gens] for i in range(d)] + [[Fraction(1)] * len(gens)]
    b = list(qpt) + [Fraction(1)]
    res = linprog([Fraction(0)] * len(gens), A, b)
    if res.status == "optimal":
        coeffs = res.x
        ok = all(c >= 0 for c in coeffs) and sum(coeffs) == 1 and all(
            sum((c * g[i] for c, g in zip(coeffs, gens)), Fraction(0)) == qpt[i] for i in range(d))
        if not ok:
            raise ConsistencyError("convex combination does not reproduce the point")
        return Membership(True, coeffs)
    u, t = res.farkas[:d], res.farkas[d]
    normal = tuple(Fraction(x) for x in primitive([-x for x in u]))
    qv = dot(normal, qpt)
    if not all(dot(normal, g) > qv for g in gens):
        raise ConsistencyError("Farkas certificate failed to separate")
    return Membership(False, normal=normal)


def in_relative_interior(point, generators) -> bool:
    """``point`` is a convex combination with every weight strictly positive."""
    qpt = qvec(point)
    gens = [qvec(g) for g in generators]
    n = len(gens)
    d = len(qpt)
    # lambda_i = mu_i + t;  maximize t
    A = [[g[i] for g in gens] + [sum((g[i] for g in gens), Fraction(0))] for i in range(d)]
    A.append([Fraction(1)] * n + [Fraction(n)])
    b = list(qpt) + [Fraction(1)]
    c = [Fraction(0)] * n + [Fraction(-1)]
    res = linprog(c, A, b)
    return res.status == "optimal" and res.x[-1] > 0


# ---------------------------------------------------------- arrangements

@dataclass(frozen=True)
class Cell:
    signs: tuple[int, ...]
    point: QVec
    dim: int
    vertices: tuple[QVec, ...] = ()


@dataclass(frozen=True)
class Arrangement:
    ambient: QPolytope
    walls: tuple[HalfSpace, ...]
    cells: tuple[Cell, ...] = field(default_factory=tuple)

    @property
    def chambers(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.dim == self.ambient.dim)

    def locate(self, x) -> tuple[int, ...]:
        x = qvec(x)
        return tuple((v > 0) - (v < 0) for v in (w.value(x) for w in self.walls))


def _barycenter(points):
    n = len(points)
    return tuple(sum(c, Fraction(0)) / n for c in zip(*points))


def _sided(w, s):
    if s == 0:
        return HalfSpace(w.normal, w.offset, "=")
    return HalfSpace.make(tuple(s * x for x in w.normal), s * w.offset, ">=")


def arrangement_chambers(ambient: QPolytope, walls: Sequence[HalfSpace]) -> Arrangement:
    """All cells of the wall arrangement inside the relative interior of a
    bounded ``ambient``, each with an exact representative point."""
    if ambient.hrep is None or ambient.vertices is None:
        ambient = polytope_convert(ambient, "h->v" if ambient.hrep is not None else "v->h")
    if ambient.rays:
        raise InputError("ambient must be bounded")
    walls = tuple(HalfSpace.make(w.normal, w.offset, "=") for w in walls)
    strict = [h for h in ambient.hrep
              if h.rel == ">=" and any(h.value(v) != 0 for v in ambient.vertices)]
    cells = [((), (), ambient)]  # (signs, extra constraints, closure)
    for w in walls:
        nxt = []
        for signs, extra, closure in cells:
            vals = [w.value(v) for v in closure.vertices]
            # a closed cell on one side of the wall has its relative interior
            # strictly on that side unless it lies inside the wall
            if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
                s = 0 if all(v == 0 for v in vals) else (1 if any(v > 0 for v in vals) else -1)
                nxt.append((signs + (s,), extra + (_sided(w, s),), closure))
                continue
            for s in (1, 0, -1):
                con = _sided(w, s)
                poly = from_halfspaces(ambient.hrep + extra + (con,), ambient.ambient_dim)
                if poly.is_empty:
                    continue
                bc = _barycenter(poly.vertices)
                ok = all(h.value(bc) > 0 for h in strict)
                for ww, ss in zip(walls, signs + (s,)):
                    v = ww.value(bc)
                    ok = ok and ((v > 0) - (v < 0)) == ss
                if ok:
                    nxt.append((signs + (s,), extra + (con,), poly))
        cells = nxt
    out = []
    for signs, extra, poly in cells:
        bc = _barycenter(poly.vertices)
        if not walls and not all(h.value(bc) > 0 for h in strict):
            continue
        out.append(Cell(signs, bc, poly.dim, poly.vertices))
    out.sort(key=lambda c: tuple(-s for s in c.signs))
    return Arrangement(ambient, walls, tuple(out))
