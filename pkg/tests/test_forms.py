from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kstab.errors import InputError
from kstab.forms import Form, OnePS, monomials, sum_zero_box


def test_form_json_round_trip():
    f = Form.make([((1, 0, 2), 1), ((0, 3, 0), -1)])
    d = f.to_json()
    assert d == {"degree": 3, "terms": [{"coeff": "-1", "exps": [0, 3, 0]},
                                        {"coeff": "1", "exps": [1, 0, 2]}]}
    assert Form.from_json(d) == f


def test_form_rejects_bad_terms():
    with pytest.raises(InputError):
        Form.make([((1, 1), 1), ((3, 0), 1)])
    with pytest.raises(InputError):
        Form.make([((1, 1), 1), ((1, 1), -1)])
    with pytest.raises(InputError):
        Form.make([((1, 1), 0.5)])


def test_substitute_swap():
    f = Form.make([((2, 1), 3)])
    g = f.substitute([[0, 1], [1, 0]])
    assert g.terms == (((1, 2), F(3)),)


def test_substitute_expands():
    # (x0 + x1)^2
    f = Form.monomial((2, 0))
    g = f.substitute([[1, 1], [0, 1]])
    assert dict(g.terms) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_substitute_composes(a, b):
    f = Form.make([((2, 1), 1), ((0, 3), -2)])
    A = [a[:2], a[2:]]
    B = [b[:2], b[2:]]
    AB = [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    try:
        left = f.substitute(A).substitute(B)
    except InputError:
        # substitution killed the form
        with pytest.raises(InputError):
            f.substitute(AB)
        return
    assert left == f.substitute(AB)


def test_monomial_count():
    assert len(monomials(3, 4)) == 15
    assert all(sum(a) == 4 for a in monomials(3, 4))


def test_one_ps_validation():
    with pytest.raises(InputError):
        OnePS.make((1, 0))
    assert OnePS.make((2, -4, 2)).weights == (1, -2, 1)
    assert OnePS.make((2, -4, 2), normalize=False).weights == (2, -4, 2)


def test_sum_zero_box():
    ws = sum_zero_box(3, 1)
    assert (1, -1, 0) in ws and (1, 0, -1) in ws
    assert all(sum(w) == 0 for w in ws)
    assert len(ws) == 6
