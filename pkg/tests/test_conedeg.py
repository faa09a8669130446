from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kstab import conedeg
from kstab.errors import InputError


def test_examples():
    assert conedeg.ci_hilbert(3, (2,), 2) == 9
    assert conedeg.ci_hilbert(4, (), 3) == comb(7, 4)
    for m in range(10):
        assert conedeg.ci_hilbert(2, (1,), m) == m + 1


def test_negative_degree_is_zero():
    assert conedeg.ci_hilbert(3, (2,), -1) == 0
    assert conedeg.ci_hilbert(3, (), -5) == 0


def test_binomial_convention():
    assert conedeg.binom(-1, 2) == 0
    assert conedeg.binom(2, 3) == 0
    assert conedeg.binom(5, 2) == 10


@pytest.mark.parametrize("n", range(1, 6))
def test_matches_monomial_oracle(n):
    for k in range(0, min(3, n + 1) + 1):
        for degrees in _degree_tuples(k):
            for m in range(31):
                assert conedeg.ci_hilbert(n, degrees, m) == conedeg.ci_hilbert_bruteforce(n, degrees, m)


def _degree_tuples(k):
    if k == 0:
        return [()]
    return [(d,) + rest for d in range(1, 5) for rest in _degree_tuples(k - 1)]


@given(st.integers(1, 5), st.lists(st.integers(1, 6), min_size=0, max_size=3), st.integers(0, 40))
def test_ambient_value_when_degrees_exceed_m(n, degrees, m):
    if all(d > m for d in degrees):
        assert conedeg.ci_hilbert(n, degrees, m) == comb(m + n, n)


def test_cone_check_examples():
    rep = conedeg.cone_quotient_check(2, 2, 6)
    assert rep.checks_passed
    assert rep.to_json()["cone_hilbert"][0] == 1
    assert conedeg.cone_quotient_check(4, 2, 10).checks_passed


@pytest.mark.parametrize("n", range(1, 6))
def test_cone_check_grid(n):
    for d in range(1, n + 2):
        rep = conedeg.cone_quotient_check(n, d, 20)
        assert rep.checks_passed
        h = rep.cone_hilbert
        assert all(a <= b for a, b in zip(h, h[1:]))


def test_cone_check_rejects():
    with pytest.raises(InputError):
        conedeg.cone_quotient_check(2, 4, 5)
    with pytest.raises(InputError):
        conedeg.cone_quotient_check(2, 2, 0)


def test_bruteforce_rejects_long_sequence():
    with pytest.raises(InputError):
        conedeg.ci_hilbert_bruteforce(1, (1, 1, 1), 2)
