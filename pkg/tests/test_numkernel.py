import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from laguerre_su11.errors import NonConvergenceError, PoleError
from laguerre_su11.numkernel import gamma_abs, gauss_laguerre, integrate, lngamma, pochhammer

finite = st.floats(min_value=0.05, max_value=30, allow_nan=False)
imag = st.floats(min_value=-30, max_value=30, allow_nan=False)


def test_lngamma_trivial_values():
    assert abs(lngamma(1)) < 1e-15
    assert abs(lngamma(0.5) - 0.5723649429247001) < 1e-14


def test_lngamma_modulus_at_2i():
    # |Gamma(iy)|^2 = pi / (y sinh(pi y))
    expected = math.sqrt(math.pi / (2 * math.sinh(2 * math.pi)))
    assert abs(abs(cmath.exp(lngamma(2j))) - expected) < 1e-15
    assert abs(expected - 0.076594) < 1e-6


@pytest.mark.parametrize("z", [0.3 + 4j, 2.5 - 7j, -3.7 + 0.2j, 12 + 30j, -0.5 - 0.5j, 150 + 1j])
def test_lngamma_against_mpmath(z):
    ref = complex(mp.loggamma(z))
    assert abs(cmath.exp(lngamma(z) - ref) - 1) < 1e-13


def test_lngamma_poles():
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            lngamma(z)


def test_gamma_abs_values():
    assert abs(gamma_abs(3) - 2) < 1e-14
    assert abs(gamma_abs(2j) - 0.0765939) < 1e-6
    # sqrt(pi / cosh(pi)) = 0.5205910
    assert abs(gamma_abs(0.5 + 1j) - math.sqrt(math.pi / math.cosh(math.pi))) < 1e-15
    assert abs(gamma_abs(0.5 + 1j) - 0.5205910) < 1e-7


@given(finite, imag)
def test_gamma_recurrence_property(x, y):
    z = complex(x, y)
    assert abs(cmath.exp(lngamma(z + 1) - lngamma(z)) / z - 1) < 1e-12


@given(imag)
def test_gamma_half_line_modulus(y):
    lhs = 2 * lngamma(complex(0.5, y)).real
    rhs = math.log(math.pi) - (abs(math.pi * y) + math.log1p(math.exp(-2 * abs(math.pi * y)))
                               - math.log(2))
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


@given(finite, imag)
def test_lngamma_conjugation(x, y):
    z = complex(x, y)
    assert abs(lngamma(z.conjugate()) - lngamma(z).conjugate()) < 1e-12


def test_pochhammer():
    assert pochhammer(0.7, 0) == 1
    assert pochhammer(2, 3) == 24
    assert pochhammer(-1, 3) == 0
    assert abs(pochhammer(0.5 + 1j, 4) - complex(mp.rf(0.5 + 1j, 4))) < 1e-12


def test_integrate_basic():
    assert abs(integrate(lambda x: 1.0, 0, 1).value - 1) < 1e-12
    assert abs(integrate(lambda x: math.exp(-x), 0, np.inf).value - 1) < 1e-9
    assert abs(integrate(lambda x: x ** -0.5, 0, 1, tol=1e-10).value - 2) < 1e-8


def test_integrate_vector_and_complex():
    res = integrate(lambda x: np.array([x, 1j * x * x]), 0, 2, tol=1e-12)
    assert np.allclose(res.value, [2, 8j / 3], atol=1e-12)


def test_integrate_nonconvergence():
    with pytest.raises(NonConvergenceError) as info:
        integrate(lambda x: math.sin(1 / x) / x ** 1.5, 1e-9, 1, tol=1e-14, max_intervals=20)
    assert info.value.estimate is not None


def test_gauss_laguerre_small_rules():
    r = gauss_laguerre(1, 0.0)
    assert np.allclose(r.nodes, [1.0]) and np.allclose(r.weights, [1.0])
    r2 = gauss_laguerre(2, 0.0)
    assert abs(np.sum(r2.weights * r2.nodes) - 1) < 1e-14
    assert abs(np.sum(gauss_laguerre(30, 0.0).weights) - 1) < 1e-13


@settings(max_examples=30)
@given(st.integers(1, 40), st.floats(-0.9, 5.0))
def test_gauss_laguerre_exactness(n, alpha):
    r = gauss_laguerre(n, alpha)
    d = 2 * n - 1
    # int x^d x^alpha e^-x dx = Gamma(alpha + d + 1)
    exact = math.exp(math.lgamma(alpha + d + 1) - math.lgamma(alpha + 1))
    approx = np.sum(r.weights * r.nodes ** d) / math.gamma(alpha + 1)
    assert abs(approx / exact - 1) < 1e-9
