"""The compiled kernels must agree with the pure-Python reference."""
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kstab import kernels
from kstab.forms import monomials
from kstab.kernels import _pure

core = pytest.importorskip("kstab.kernels._core")


vec = st.lists(st.integers(-6, 6), min_size=3, max_size=3)


@given(st.lists(st.lists(st.integers(0, 5), min_size=3, max_size=3), min_size=1, max_size=6),
       st.lists(vec, min_size=1, max_size=6))
def test_hm_weights_parity(support, ws):
    assert core.hm_weights(support, ws) == _pure.hm_weights(support, ws)


@given(st.integers(2, 4), st.data())
def test_nullspace_parity(nvars, data):
    row = st.lists(st.integers(-3, 3), min_size=nvars, max_size=nvars)
    diffs = [tuple(r) for r in data.draw(st.lists(row, min_size=0, max_size=6))]
    assert core.nullspace_candidates(diffs, nvars) == _pure.nullspace_candidates(diffs, nvars)


@given(st.integers(1, 5), st.integers(0, 12), st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_count_parity(nvars, m, bounds):
    b = bounds[:nvars]
    assert core.count_bounded_monomials(nvars, m, b) == _pure.count_bounded_monomials(nvars, m, b)


@given(st.integers(0, 14), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_weight_sum_parity(m, w):
    assert core.monomial_weight_sum(m, w) == _pure.monomial_weight_sum(m, w)


def test_count_matches_enumeration():
    for nvars in range(1, 4):
        for m in range(6):
            assert _pure.count_bounded_monomials(nvars, m, [0] * nvars) == comb(m + nvars - 1, nvars - 1)
            bounded = [a for a in monomials(nvars, m) if a[0] < 2]
            assert _pure.count_bounded_monomials(nvars, m, [2] + [0] * (nvars - 1)) == len(bounded)


def test_weight_sum_matches_enumeration():
    w = (3, -1, -2)
    for m in range(6):
        direct = sum(sum(a * b for a, b in zip(al, w)) for al in monomials(3, m))
        assert _pure.monomial_weight_sum(m, w) == direct


def test_dispatcher_routes_large_inputs_to_pure():
    big = 2 ** 40
    assert kernels.hm_weights([(big, 0)], [(big, -big)]) == [-big * big]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
