from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kstab import qgeom
from kstab.errors import InputError
from kstab.qgeom import HalfSpace, QPolytope


def brute_vertices(halfspaces, d):
    """Vertices by solving every d-subset of tight constraints."""
    rows = []
    for h in halfspaces:
        rows.append((list(h.normal), h.offset))
        if h.rel == "=":
            rows.append(([-x for x in h.normal], -h.offset))
    out = set()
    for sub in combinations(rows, d):
        try:
            x = qgeom.solve_linear_system([r for r, _ in sub], [o for _, o in sub])
        except qgeom.UnderdeterminedSystem:
            continue
        if x is None:
            continue
        if all(qgeom.dot(r, x) >= o for r, o in rows):
            out.add(x)
    return out


def box(d, lo=0, hi=1):
    hs = []
    for i in range(d):
        e = [int(i == j) for j in range(d)]
        hs.append(HalfSpace.make(e, lo))
        hs.append(HalfSpace.make([-x for x in e], -hi))
    return hs


def test_simplex_vertices():
    hs = [HalfSpace.make([1, 0], 0), HalfSpace.make([0, 1], 0), HalfSpace.make([-1, -1], -1)]
    p = qgeom.from_halfspaces(hs, 2)
    assert set(p.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert p.dim == 2


def test_interval():
    p = qgeom.from_halfspaces([HalfSpace.make([1], 0), HalfSpace.make([-4], -3)], 1)
    assert p.vertices == ((F(0),), (F(3, 4),))


def test_empty_polytope():
    p = qgeom.from_halfspaces([HalfSpace.make([1], 1), HalfSpace.make([-1], 0)], 1)
    assert p.is_empty


def test_unit_square_from_points_has_four_facets():
    p = qgeom.from_points([(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
    assert len(p.vertices) == 4
    assert len([h for h in p.hrep if h.rel == ">="]) == 4


def test_lower_dimensional_hull_carries_equalities():
    p = qgeom.from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert p.dim == 2
    assert any(h.rel == "=" for h in p.hrep)
    assert p.contains((F(1, 3), F(1, 3), F(1, 3)))
    assert not p.contains((F(1, 2), F(1, 2), F(1, 2)))


def test_redundant_halfspace_is_dropped():
    hs = box(2) + [HalfSpace.make([1, 1], -5)]
    p = qgeom.from_halfspaces(hs, 2)
    assert len(p.hrep) == 4


def test_json_round_trip():
    p = qgeom.from_halfspaces(box(2), 2)
    r = QPolytope.from_json(p.to_json())
    assert r.vertices == p.vertices and r.hrep == p.hrep


def test_convert_rejects_unknown_direction():
    with pytest.raises(InputError):
        qgeom.polytope_convert(QPolytope(1, vertices=((F(0),),)), "sideways")


halfspace_st = st.tuples(
    st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any), st.integers(-3, 3))


@given(st.lists(halfspace_st, min_size=0, max_size=5))
def test_h_to_v_matches_bruteforce(extra):
    hs = box(3, -2, 2) + [HalfSpace.make(n, o) for n, o in extra]
    p = qgeom.from_halfspaces(hs, 3)
    assert set(p.vertices or ()) == brute_vertices(hs, 3)


@given(st.lists(st.tuples(*[st.integers(-4, 4)] * 3), min_size=1, max_size=8))
def test_v_to_h_round_trip(points):
    p = qgeom.from_points(points)
    assert all(p.contains(x) for x in points)
    back = qgeom.polytope_convert(QPolytope(3, hrep=p.hrep), "h->v")
    assert set(back.vertices) == set(p.vertices)
    assert p.dim == qgeom.affine_dim(points)


def test_hull_membership_certificates():
    gens = [(3, 0, 0), (0, 3, 0), (0, 0, 3)]
    m = qgeom.hull_membership((1, 1, 1), gens)
    assert m.inside and m.coefficients == (F(1, 3),) * 3
    cusp = [(1, 0, 2), (0, 3, 0)]
    m = qgeom.hull_membership((1, 1, 1), cusp)
    assert not m.inside
    assert all(qgeom.dot(m.normal, g) > qgeom.dot(m.normal, (1, 1, 1)) for g in cusp)


def test_hull_membership_point_is_a_generator():
    m = qgeom.hull_membership((0, 1), [(1, 0), (0, 1)])
    assert m.coefficients == (0, 1)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_hull_membership_agrees_with_hrep(gens, point):
    p = qgeom.from_points(gens)
    assert qgeom.hull_membership(point, gens).inside == p.contains(point)


def test_relative_interior():
    gens = [(0, 0), (2, 0), (0, 2)]
    assert qgeom.in_relative_interior((F(1, 2), F(1, 2)), gens)
    assert not qgeom.in_relative_interior((1, 0), gens)


def test_linprog_farkas():
    # x1 + x2 = -1 with x >= 0 is infeasible
    res = qgeom.linprog([0, 0], [[1, 1]], [-1])
    assert res.status == "infeasible"
    y = res.farkas
    assert all(y[0] * a <= 0 for a in (1, 1)) and y[0] * -1 > 0


def test_linprog_optimum():
    res = qgeom.linprog([1, 2, 0], [[1, 1, 1]], [4])
    assert res.status == "optimal" and res.value == 0


def test_solve_linear_system_cases():
    assert qgeom.solve_linear_system([[1, 0], [0, 1]], [3, 4]) == (3, 4)
    assert qgeom.solve_linear_system([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(qgeom.UnderdeterminedSystem):
        qgeom.solve_linear_system([[1, 1]], [1])


def simplex2():
    hs = [HalfSpace.make([1, 0], 0), HalfSpace.make([0, 1], 0), HalfSpace.make([1, 1], 1, "=")]
    return qgeom.from_halfspaces(hs, 2)


def test_arrangement_single_wall():
    arr = qgeom.arrangement_chambers(simplex2(), [HalfSpace.make([1, -1], 0, "=")])
    assert len(arr.chambers) == 2
    assert len(arr.cells) == 3
    assert arr.locate((F(1, 2), F(1, 2))) == (0,)


def test_arrangement_two_walls():
    walls = [HalfSpace.make([1, -1], 0, "="), HalfSpace.make([1, -2], 0, "=")]
    arr = qgeom.arrangement_chambers(simplex2(), walls)
    assert len(arr.chambers) == 3
    for c in arr.cells:
        assert arr.locate(c.point) == c.signs


def test_arrangement_wall_missing_interior_is_inert():
    arr = qgeom.arrangement_chambers(simplex2(), [HalfSpace.make([1, 0], 0, "=")])
    assert len(arr.chambers) == 1


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
                .filter(lambda t: t[0] or t[1] or t[2]), min_size=1, max_size=4))
def test_arrangement_cells_in_2d_triangle(walls):
    tri = [HalfSpace.make([1, 0, 0], 0), HalfSpace.make([0, 1, 0], 0), HalfSpace.make([0, 0, 1], 0),
           HalfSpace.make([1, 1, 1], 1, "=")]
    amb = qgeom.from_halfspaces(tri, 3)
    ws = []
    for a, b, c in walls:
        try:
            ws.append(HalfSpace.make([a, b, c], 0, "="))
        except InputError:
            pass
    assume(ws)
    arr = qgeom.arrangement_chambers(amb, ws)
    signs = [c.signs for c in arr.cells]
    assert len(signs) == len(set(signs))
    for c in arr.cells:
        assert arr.locate(c.point) == c.signs
        assert all(x > 0 for x in c.point)
    # every interior point lies in some reported cell
    for i in range(1, 9):
        for j in range(1, 9 - i):
            x = (F(i, 9), F(j, 9), F(9 - i - j, 9))
            assert arr.locate(x) in signs
