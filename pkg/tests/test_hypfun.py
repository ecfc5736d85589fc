import cmath
import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from laguerre_su11.errors import PoleError
from laguerre_su11.hypfun import hyp1f1, hyp2f1_neg, hypU, hypu_scaled

par = st.floats(min_value=-4, max_value=4, allow_nan=False)
pos = st.floats(min_value=0.2, max_value=4, allow_nan=False)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_hyp1f1_values():
    assert hyp1f1(0.3 + 1j, 2.0, 0.0) == 1
    assert abs(hyp1f1(-1, 2, 3) - (-0.5)) < 1e-15
    assert abs(hyp1f1(1, 1, 1) - math.e) < 1e-14


@pytest.mark.parametrize("a,b,z", [(0.5 + 1j, 1 + 2j, 3.0), (-2.5 + 0.3j, 1.5, -20.0),
                                   (3 + 4j, 1 - 2j, 40.0), (0.7, 2.2, -60.0), (-7.5, 0.5, 10.0),
                                   (1.5 - 3j, 1 + 6j, 2 + 5j)])
def test_hyp1f1_against_mpmath(a, b, z):
    assert rel(hyp1f1(a, b, z), complex(mp.hyp1f1(a, b, z))) < 1e-11


def test_hyp1f1_pole():
    with pytest.raises(PoleError):
        hyp1f1(0.5, -2, 1.0)


@settings(max_examples=40)
@given(par, par, pos, st.floats(-15, 15))
def test_kummer_transformation(ar, ai, b, z):
    a = complex(ar, ai)
    lhs = hyp1f1(a, b, z)
    rhs = cmath.exp(z) * hyp1f1(b - a, b, -z)
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(rhs), 1e-8)


def test_hypU_values():
    assert hypU(0, 1.7, 2.0) == 1
    assert abs(hypU(-1, 1.5, 2.0) - 0.5) < 1e-14   # z - b
    assert abs(hypU(0.5 + 1j, 1 + 2j, 50.0) * 50 ** (0.5 + 1j) - 1) < 0.05


@pytest.mark.parametrize("a,b,z", [(0.5 + 1j, 1 + 2j, 0.7), (1.2 - 0.4j, 1 - 2j, 3.0),
                                   (2.5 + 0.5j, 1 + 0.6j, 25.0), (-1.5 + 2j, 1 + 3j, 0.1),
                                   (0.8, 1.0, 1.3), (0.5 + 1j, 1 + 2j, -2 + 1j),
                                   (4.5 - 1j, 1 - 2j, 80.0)])
def test_hypU_against_mpmath(a, b, z):
    assert rel(hypU(a, b, z), complex(mp.hyperu(a, b, z))) < 1e-9


def test_hypU_integer_b_limit():
    # b = 1 exactly uses the averaged offset scheme
    ref = complex(mp.hyperu(0.5 + 0.3j, 1, 1.5))
    assert rel(hypU(0.5 + 0.3j, 1.0, 1.5), ref) < 1e-8


def test_hypu_scaled_matches_product():
    a, b, z = 3.5 + 1j, 1 + 2j, 2.0
    lf = 2.0
    assert rel(hypu_scaled(a, b, z, lf), math.exp(lf) * hypU(a, b, z)) < 1e-10


@settings(max_examples=40)
@given(par, par, st.floats(-2, 2), st.floats(0.1, 2), st.floats(0.3, 20))
def test_U_reflection(ar, ai, br, bi, z):
    a, b = complex(ar, ai), complex(br, bi)
    lhs = hypU(a, b, z)
    rhs = z ** (1 - b) * hypU(a - b + 1, 2 - b, z)
    assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), abs(rhs))


def test_hyp2f1_values():
    assert hyp2f1_neg(0.3, 1 + 1j, 2.0, 0.0) == 1
    assert abs(hyp2f1_neg(1, 2, 2, -1) - 0.5) < 1e-15
    assert abs(hyp2f1_neg(-1, 3, 2, -0.5) - 1.75) < 1e-15


def test_hyp2f1_domain_and_pole():
    with pytest.raises(ValueError):
        hyp2f1_neg(1, 1, 1, 0.5)
    with pytest.raises(PoleError):
        hyp2f1_neg(1, 1, -2, -0.5)


@pytest.mark.parametrize("z", [-0.3, -0.7, -1.4, -2.0, -10.0, -1e4])
@pytest.mark.parametrize("a,b,c", [(1.5 - 2j, 1.5 + 2j, 2.0), (0.5 + 0.0j, 0.5, 1.0),
                                   (3 - 7j, 3 + 7j, 1.5), (0.25 + 1j, 1.25, 0.5)])
def test_hyp2f1_against_mpmath(a, b, c, z):
    assert rel(hyp2f1_neg(a, b, c, z), complex(mp.hyp2f1(a, b, c, z))) < 1e-10


@settings(max_examples=40)
@given(par, par, par, st.floats(0.5, 4), st.floats(-0.75, -0.25))
def test_pfaff_agrees_with_series(ar, ai, br, c, z):
    a, b = complex(ar, ai), complex(br, 0.3)
    direct = complex(mp.hyp2f1(a, b, c, z))
    assert abs(hyp2f1_neg(a, b, c, z) - direct) <= 1e-10 * max(abs(direct), 1e-6)
