import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from laguerre_su11.errors import DomainError, PoleError
from laguerre_su11.jacobifn import (JacobiParams, LambdaGrid, c_function, jacobi_fn, jacobi_fn_real,
                                    jacobi_inverse, jacobi_ode_residual, jacobi_transform,
                                    jacobi_weight, parseval_sides, plancherel, plancherel_density,
                                    sample_transform)
from laguerre_su11.suites import JACOBI_SUPPORT, _bump_test_function

from . import oracles

J = JacobiParams


def test_jacobi_fn_trivial_values():
    assert jacobi_fn(2.0, J(1, 0.5), 0.0) == 1
    p = J(1.0, 0.5)
    for x in (0.3, 2.0, 7.0):
        assert abs(jacobi_fn(-1j * (p.alpha + p.beta + 1), p, x) - 1) < 1e-14
    assert abs(jacobi_fn(2, p, 3) - jacobi_fn(-2, p, 3)) < 1e-12


@pytest.mark.parametrize("lam", [0.0, 0.4, 3.0, 12.0, 1.5j])
@pytest.mark.parametrize("ab", [(1.0, 0.0), (0.0, 2.5), (-0.5, 0.3)])
@pytest.mark.parametrize("x", [0.05, 0.9, 4.0, 80.0])
def test_jacobi_fn_against_mpmath(lam, ab, x):
    ref = complex(oracles.jacobi(lam, *ab, x))
    assert abs(jacobi_fn(lam, J(*ab), x) - ref) <= 1e-10 * max(abs(ref), 1e-300)


@pytest.mark.parametrize("ab", [(1.0, 0.0), (0.0, 2.5)])
def test_jacobi_fn_real_matches_scalar(ab):
    lams = np.array([0.0, 1e-5, 0.3, 2.0, 9.5, 25.0])
    for x in (0.05, 1.2, 20.0, 3000.0):
        vec = jacobi_fn_real(lams, J(*ab), x)
        ref = np.array([jacobi_fn(l, J(*ab), x) for l in lams])
        assert np.max(np.abs(vec - ref) / np.maximum(np.abs(ref), 1e-300)) < 1e-9


def test_jacobi_weight():
    assert jacobi_weight(J(0, 0), 1) == 2
    assert jacobi_weight(J(1, -1), 1) == 1
    assert jacobi_weight(J(0.5, 0), 0) == 0
    with pytest.raises(DomainError):
        jacobi_weight(J(0, 0), -1)


def test_c_function_values():
    assert abs(abs(c_function(2.0, J(0, 0))) ** -2 - 3.130) < 1e-3
    # |Gamma(1/2 + i)|^4 / (4 |Gamma(2i)|^2) written out in closed form
    closed = (math.pi / math.cosh(math.pi)) ** 2 / (4 * math.pi / (2 * math.sinh(2 * math.pi)))
    assert abs(plancherel_density(2.0, J(0, 0)) - closed) < 1e-12 * closed
    with pytest.raises(PoleError):
        c_function(0.0, J(0, 0))


@settings(max_examples=40)
@given(st.floats(0.01, 20), st.floats(-0.9, 3), st.floats(-3, 3))
def test_c_function_reflection_and_density(lam, a, b):
    p = J(a, b)
    c = c_function(lam, p)
    assert abs(c_function(-lam, p) - c.conjugate()) <= 1e-12 * abs(c)
    assert plancherel_density(lam, p) > 0


def test_density_vanishes_quadratically():
    p = J(1.0, 0.0)
    r = plancherel_density(1e-2, p) / plancherel_density(1e-3, p)
    assert abs(math.log10(r) - 2) < 1e-3


def test_plancherel_discrete_part():
    assert plancherel(J(1.0, 0.0)).discrete == ()
    assert plancherel(J(0.0, 1.0)).discrete == ()
    d = plancherel(J(0.0, 2.5)).discrete
    assert len(d) == 1 and d[0][0] == 1.5j
    # independent oracle: -i lim (mu - mu0) / (c(mu) c(-mu)) in mpmath
    mp.mp.dps = 40
    a, b = 0, mp.mpf(2.5)

    def c(lam):
        return (2 ** (a + b + 1 - 1j * lam) * mp.gamma(a + 1) * mp.gamma(1j * lam)
                / (mp.gamma((a + b + 1 + 1j * lam) / 2) * mp.gamma((a - b + 1 + 1j * lam) / 2)))

    mu0 = mp.mpc(0, 1.5)
    h = mp.mpf("1e-20")
    ref = complex(-1j * h / (c(mu0 + h) * c(-(mu0 + h))))
    mp.mp.dps = 30
    assert abs(ref - 0.0234375) < 1e-12
    assert abs(d[0][1] - 0.0234375) < 1e-9
    assert d[0][1].real > 0 if isinstance(d[0][1], complex) else d[0][1] > 0


def test_plancherel_two_points():
    d = plancherel(J(0.0, 5.0)).discrete
    assert sorted(lam.imag for lam, _ in d) == [2.0, 4.0]
    assert all(np.real(w) > 0 for _, w in d)


@pytest.mark.parametrize("lam,ab,x", [(2.0, (1, 0), 0.5), (0.7, (0, 2.5), 3.0), (5.0, (-0.5, 1), 1.5)])
def test_ode_residual(lam, ab, x):
    r1 = jacobi_ode_residual(lam, J(*ab), x, h=1e-3)
    r2 = jacobi_ode_residual(lam, J(*ab), x, h=5e-4)
    assert r1 < 1e-6
    assert r2 < r1 / 3


def test_transform_linearity_and_zero():
    p = J(1.0, 0.0)
    lams = np.array([0.5, 2.0, 6.0])
    F1 = jacobi_transform(_bump_test_function, p, lams, support=JACOBI_SUPPORT)
    F2 = jacobi_transform(lambda x: 2 * _bump_test_function(x), p, lams, support=JACOBI_SUPPORT,
                          scale=None)
    assert np.max(np.abs(F2 - 2 * F1)) <= 1e-13 * np.max(np.abs(F1)) * 10
    F0 = jacobi_transform(lambda x: 0.0, p, lams, support=JACOBI_SUPPORT, scale=1.0)
    assert np.all(F0 == 0)


def test_transform_of_gaussian_like_function_matches_mpmath():
    p = J(1.0, 0.0)
    lam = 1.3
    mp.mp.dps = 20
    ref = mp.quad(lambda x: _bump_test_function(float(x)) * oracles.jacobi(lam, 1.0, 0.0, x)
                  * 2 ** 3 * x, [0, 1, 10, 100, JACOBI_SUPPORT])
    mp.mp.dps = 30
    got = jacobi_transform(_bump_test_function, p, [lam], support=JACOBI_SUPPORT)[0]
    assert abs(got - complex(ref)) < 1e-7 * abs(complex(ref))


def test_uniform_grid():
    g = LambdaGrid.uniform(4.0, panel=1.0, order=8)
    assert len(g.nodes) == 32 and abs(g.weights.sum() - 4.0) < 1e-14


@pytest.mark.parametrize("ab", [(1.0, 0.0), (0.0, 2.5)])
def test_round_trip_and_parseval(ab):
    p = J(*ab)
    F = sample_transform(_bump_test_function, p, support=JACOBI_SUPPORT)
    for x in (0.5, 1.0, 2.0):
        fx = _bump_test_function(x)
        assert abs(jacobi_inverse(F, p, x) - fx) < 1e-5 * abs(fx)
    lhs, rhs = parseval_sides(_bump_test_function, F, p, support=JACOBI_SUPPORT)
    assert abs(lhs - rhs) < 1e-5 * abs(lhs)
