import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from laguerre_su11.errors import BranchCutError, DomainError, PoleError
from laguerre_su11.laguerreop import (OperatorL, PrincipalParams, SolutionFamily, asymptotic_check,
                                      coeffs, connection, finite_section_resolvent, laguerre_function,
                                      laguerre_gram, resolvent_element, solution, solution_range,
                                      spectral_projection, spectral_weight, wronskian,
                                      wronskian_phi_Phi, wronskian_phi_Phi_numeric)

from . import oracles

P = PrincipalParams


def test_coefficients():
    assert abs(coeffs(P(1, 0), 0)[0] - math.sqrt(1.25)) < 1e-15
    assert coeffs(P(1, 0.25), -2)[1] == -3.5
    assert abs(coeffs(P(0.5, 0), -1)[0] - math.sqrt(0.5)) < 1e-15
    assert OperatorL(P(0.3, 0.6)).coeffs(4) == coeffs(P(0.3, 0.6), 4)


def test_params_validation():
    with pytest.raises(DomainError):
        P(0.0, 0.5)
    with pytest.raises(DomainError):
        P(1.0, 1.0)
    with pytest.raises(DomainError):
        P(-0.2, 0.1)
    with pytest.raises(DomainError):
        P(0.0, 0.25, lam=-0.1)
    P(0.0, 0.25, lam=-0.3)


@settings(max_examples=40)
@given(st.floats(0.0, 3.0), st.floats(0.0, 0.99), st.integers(-40, 40))
def test_coefficients_positive(rho, eps, k):
    if rho == 0 and abs(eps - 0.5) < 1e-9:
        return
    a, b = coeffs(P(rho, eps), k)
    assert a > 0 and b == 2 * (k + eps)


ORACLE = {"s": oracles.s_family, "t": oracles.t_family, "u": oracles.u_family, "v": oracles.v_family}


@pytest.mark.parametrize("family", "stuv")
@pytest.mark.parametrize("rho,eps,z", [(1.0, 0.25, 0.7 + 0.3j), (0.6, 0.8, 2 - 1j), (1.7, 0.0, -1.5 + 0.5j)])
@pytest.mark.parametrize("k", [-6, 0, 5])
def test_families_against_mpmath(family, rho, eps, z, k):
    ref = complex(ORACLE[family](k, z, rho, eps))
    got = solution(family, P(rho, eps), z, k)
    assert abs(got - ref) <= 1e-9 * abs(ref)


@pytest.mark.parametrize("family", "stuv")
@pytest.mark.parametrize("rho,eps,z", [(1.0, 0.25, 0.7 + 0j), (0.6, 0.8, 2 - 1j),
                                       (0.3, 0.1, -0.4 + 2j), (2.0, 0.5, 1j)])
def test_recurrence_residuals(family, rho, eps, z):
    if z.imag == 0 and ((family == "u" and z.real <= 0) or (family == "v" and z.real >= 0)):
        return
    f = SolutionFamily(family, P(rho, eps), z)
    assert max(f.residual(k) for k in range(-10, 11)) < 1e-8


def test_solution_range_matches_pointwise():
    p = P(0.8, 0.3)
    vals = solution_range("u", p, 2 + 1j, -5, 5)
    for k, v in zip(range(-5, 6), vals):
        assert abs(v - solution("u", p, 2 + 1j, k)) <= 1e-9 * abs(v)


def test_branch_cuts():
    with pytest.raises(BranchCutError):
        solution("u", P(1, 0), -1.0, 0)
    with pytest.raises(BranchCutError):
        solution("v", P(1, 0), 2.0, 0)
    with pytest.raises(ValueError):
        solution("w", P(1, 0), 1.0, 0)


def test_kernel_triviality():
    for p in (P(1, 0.25), P(0.4, 0.7)):
        for k in range(-50, 51, 7):
            assert abs(abs(solution("s", p, 0, k)) - 1) < 1e-10
            assert abs(abs(solution("t", p, 0, k)) - 1) < 1e-10


def test_t_at_zero_reflection():
    rho, eps = 0.9, 0.35
    p = P(rho, eps)
    fac = cmath.sin(math.pi * (eps + 0.5 - 1j * rho)) / abs(cmath.sin(math.pi * (eps + 0.5 + 1j * rho)))
    for k in (-3, 0, 4):
        assert abs(solution("t", p, 0, k) - fac * solution("s", p, 0, k).conjugate()) < 1e-12


def test_symmetry_under_reflection():
    # (-1)^k f_{-k} at (-rho, -eps) solves the equation at -z; coefficients
    # a_k, b_k with eps -> -eps turn into a_{-k-1}, -b_{-k}
    rho, eps, z = 0.7, 0.3, 1.2 + 0.4j
    f = SolutionFamily("s", P(rho, eps), z)
    g = {k: (-1) ** k * f(-k) for k in range(-8, 9)}
    for k in range(-7, 8):
        a_k = abs(complex(k - eps + 0.5, -rho))
        a_km = abs(complex(k - 1 - eps + 0.5, -rho))
        r = a_k * g[k + 1] + (2 * (k - eps) - z) * g[k] + a_km * g[k - 1]
        assert abs(r) <= 1e-9 * max(abs(g[k]), 1.0)


def test_evenness_in_rho():
    x, eps = 1.7, 0.2
    for rho in (0.4, 1.3):
        for k in (-2, 0, 3):
            lhs = x ** (1j * rho) * complex(oracles.u_family(k, x, rho, eps))
            rhs = x ** (-1j * rho) * complex(oracles.u_family(k, x, -rho, eps))
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)
            got = x ** (1j * rho) * solution("u", P(rho, eps), x, k)
            assert abs(got - lhs) <= 1e-9 * abs(lhs)


def test_square_summability_split():
    p, z = P(0.8, 0.3), 1 + 1j
    u = np.abs(solution_range("u", p, z, 0, 400)) ** 2
    assert u[200:].sum() < 1e-10 * u.sum()
    s = np.abs(solution_range("s", p, z, 0, 400)) ** 2
    assert s[200:].sum() > s[:200].sum()


# ------------------------------------------------------------ connection


def test_connection_A_constant():
    p = P(0.8, 0.3)
    assert connection(p, 1 + 1j).A == connection(p, 3 - 2j).A


@pytest.mark.parametrize("z", [2 + 1j, -1 + 0.5j, 0.3 - 2j])
def test_connection_first_system(z):
    p = P(0.8, 0.3)
    cc = connection(p, z)
    for k in range(-5, 6):
        s, t = solution("s", p, z, k), solution("t", p, z, k)
        u, v = solution("u", p, z, k), solution("v", p, z, k)
        assert abs(u - (cc.A * s + cc.B * t)) <= 1e-8 * abs(u)
        assert abs(v - (cc.C * s + cc.D * t)) <= 1e-8 * abs(v)


def test_connection_second_system_and_inverse():
    p, z = P(0.8, 0.3), 1 + 0.5j
    cc = connection(p, z)
    prod = cc.matrix(2) @ cc.matrix(1)
    assert np.max(np.abs(prod - np.eye(2))) < 1e-9
    for k in (-3, 0, 3):
        u, v = solution("u", p, z, k), solution("v", p, z, k)
        s = solution("s", p, z, k)
        assert abs(s - (cc.E * u + cc.F * v)) <= 1e-8 * abs(s)


def test_connection_errors():
    with pytest.raises(PoleError):
        connection(P(0.0, 0.2), 1j)
    cc = connection(P(1, 0.2), 2.0)
    assert cc.xi == 0 and cc.C is None
    with pytest.raises(BranchCutError):
        cc.matrix(2)


# ------------------------------------------------------------ Wronskians


def test_wronskian_s_t_at_zero():
    for rho in (0.3, 1.0, 2.2):
        p = P(rho, 0.0)
        w = wronskian(SolutionFamily("s", p, 0), SolutionFamily("t", p, 0), 0)
        assert abs(w - 2j * rho) < 1e-10


def test_wronskian_antisymmetric_and_constant():
    p, z = P(0.8, 0.3), 1.5 - 0.7j
    s, u = SolutionFamily("s", p, z), SolutionFamily("u", p, z)
    assert wronskian(s, s, 3) == 0
    vals = [wronskian(s, u, k) for k in range(-10, 11)]
    assert max(abs(v - vals[10]) for v in vals) < 1e-10 * abs(vals[10])


def test_wronskian_phi_Phi_value():
    # i pi / cosh(pi) magnitude; the sign follows from the numeric Wronskian
    w = wronskian_phi_Phi(P(1, 0), 1 + 1j)
    assert abs(w - (-1j * math.pi / math.cosh(math.pi))) < 1e-12
    assert abs(abs(w) - 0.27101) < 1e-5
    assert abs(wronskian_phi_Phi(P(1, 0), 1 - 1j) - w.conjugate()) < 1e-15


@pytest.mark.parametrize("rho,eps,z", [(0.7, 0.4, 1 + 2j), (1, 0, 1 + 1j), (0.5, 0.8, -2 - 0.3j)])
def test_wronskian_closed_form_vs_numeric(rho, eps, z):
    p = P(rho, eps)
    closed = wronskian_phi_Phi(p, z)
    for k in (-4, 0, 4):
        assert abs(wronskian_phi_Phi_numeric(p, z, k) - closed) < 1e-8 * abs(closed)


def test_wronskian_real_axis_error():
    with pytest.raises(BranchCutError):
        wronskian_phi_Phi(P(1, 0), 2.0)


# ------------------------------------------------------ Laguerre functions


def test_laguerre_function_real_after_phase():
    p = P(1, 0.25)
    val = laguerre_function(0, 1.5, p)
    assert abs((1.5 ** 1j * val.scalar).imag) < 1e-12


def test_laguerre_function_pair_norm():
    for rho in (0.5, 1.2):
        p = P(rho, 0.3)
        g2 = abs(complex(oracles.mp.gamma(2j * rho))) ** 2
        for n in (-2, 0, 3):
            val = laguerre_function(n, 0.0, p)
            assert val.is_pair
            assert abs(val.norm_sq() - 2 * g2) < 1e-10 * g2
    with pytest.raises(PoleError):
        laguerre_function(0, 0.0, P(0.0, 0.3))


def test_spectral_weight():
    p = P(1, 0)
    assert abs(spectral_weight(0, p) - math.cosh(math.pi) ** 2 / math.pi ** 2) < 1e-12
    assert abs(spectral_weight(0, p) - 13.615) < 1e-3
    xs = np.linspace(-5, 5, 21)
    w = spectral_weight(xs, P(0.4, 0.7))
    assert np.all(w >= 0) and np.allclose(w, w[::-1])


def test_psi_zero_norm():
    g = laguerre_gram(P(1, 0.25), nmax=0)
    assert abs(g[0, 0] - 1) < 1e-6


# ------------------------------------------------------------ resolvent


def test_resolvent_vs_finite_section():
    p, z = P(1, 0.25), 0.5 + 1j
    e0 = {0: 1.0}
    exact = resolvent_element(p, z, e0, e0)
    assert abs(exact - finite_section_resolvent(p, z, e0, e0, N=400)) < 1e-6


def test_finite_section_converges_near_axis():
    p, z = P(1, 0.25), -2 + 0.3j
    e = {0: 1.0, 1: 0.5}
    exact = resolvent_element(p, z, e, e)
    assert abs(finite_section_resolvent(p, z, e, e, N=400) - exact) > 1e-5
    assert abs(finite_section_resolvent(p, z, e, e, N=6400) - exact) < 1e-12


def test_resolvent_conjugation_and_herglotz():
    p, z = P(0.6, 0.8), -0.7 + 0.4j
    e = {1: 1.0, -2: 0.5}
    g = resolvent_element(p, z, e, e)
    assert abs(resolvent_element(p, z.conjugate(), e, e) - g.conjugate()) < 1e-12
    # (-L - z)^{-1} is a Herglotz function of z
    assert g.imag / z.imag > 0


def test_resolvent_errors():
    with pytest.raises(BranchCutError):
        resolvent_element(P(1, 0), 1.0, {0: 1}, {0: 1})
    with pytest.raises(TypeError):
        resolvent_element(P(1, 0), 1j, [1.0], {0: 1})


# -------------------------------------------------------- spectral measure


def test_spectral_projection_positive_additive():
    p = P(1, 0.25)
    f = {0: 1.0, 1: -0.5}
    b1 = spectral_projection(p, [(-2.0, 0.5)], f, f)
    b2 = spectral_projection(p, [(0.5, 3.0)], f, f)
    both = spectral_projection(p, [(-2.0, 3.0)], f, f)
    assert abs(b1.imag) < 1e-9 and b1.real >= -1e-9 and b2.real >= -1e-9
    assert abs(b1 + b2 - both) < 1e-8


@pytest.mark.slow
def test_spectral_completeness_small_window():
    p = P(0.6, 0.8)
    for n, m in [(0, 0), (1, -1), (2, 2)]:
        val = spectral_projection(p, [(-np.inf, np.inf)], {n: 1.0}, {m: 1.0})
        assert abs(val - (n == m)) < 1e-6


# ------------------------------------------------------------ asymptotics


@pytest.mark.parametrize("family", "us")
def test_asymptotics(family):
    rep = asymptotic_check(family, P(1, 0.25), 1 + 1j, 400)
    assert rep.passed and rep.residual < 0.1


def test_asymptotic_rate():
    p = P(1, 0.25)
    r1 = asymptotic_check("u", p, 1 + 1j, 100).residual
    r4 = asymptotic_check("u", p, 1 + 1j, 400).residual
    assert 0.3 < r4 / r1 < 0.7


def test_asymptotic_domain():
    with pytest.raises(DomainError):
        asymptotic_check("u", P(1, 0), 2.0, 100)
