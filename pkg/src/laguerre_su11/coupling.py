"""Tensor products pi+_k1 x pi-_k2: decomposition coefficients, parabolic
Clebsch-Gordan coefficients and the Laguerre product formula.

Only the absolutely continuous regime k1+k2 >= 1/2, |k1-k2| <= 1/2 is
supported; there the tensor product is a direct integral of principal
series pi^{rho, eps} with eps = k1-k2+L.

All rho-integrals run over [1e-6, Lambda] plus a one-point rectangle on
[0, 1e-6] (the integrands are finite at rho = 0). Lambda grows in steps
of 5 until the last panel adds less than 1e-9 of the running total.
"""
import math
import time
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, LimitRegimeWarning, NonConvergenceError, PoleError
from .hypfun import hypU
from .jacobifn import jacobi_fn_real
from .laguerreop import PrincipalParams, laguerre_function
from .numkernel import integrate, lngamma
from .orthopoly import _cdh_poly, _check_regime, decomp_cdh, laguerre
from .report import VerificationReport
from .su11 import RepLabel, action

__all__ = [
    "TensorParams",
    "CgConstants",
    "ProductConstants",
    "decomp_coefficient",
    "decomp_inner_products",
    "cg_constants",
    "cg_coefficient",
    "normalization_integral",
    "verify_cg_normalization",
    "product_constants",
    "product_rhs",
    "verify_product_formula",
    "cg_recurrence_residual",
    "cg_recurrence_check",
]

RHO_MIN = 1e-6
PANEL = 5.0
LAMBDA_MAX = 200.0


@dataclass(frozen=True)
class TensorParams:
    """(k1, k2) of pi+_k1 x pi-_k2 with L, eps such that eps = k1-k2+L in [0, 1)."""

    k1: float
    k2: float

    def __post_init__(self):
        object.__setattr__(self, "k1", float(self.k1))
        object.__setattr__(self, "k2", float(self.k2))
        _check_regime(self.k1, self.k2)

    @property
    def L(self):
        # the 1e-12 keeps eps = 0 from rounding to eps = 1 when k1 == k2
        return -math.floor(self.k1 - self.k2 + 1e-12)

    @property
    def eps(self):
        return max(0.0, self.k1 - self.k2 + self.L)

    @property
    def K(self):
        return self.k1 + self.k2

    def principal(self, rho):
        return PrincipalParams(rho=rho, eps=self.eps)


def _tp(tp):
    return tp if isinstance(tp, TensorParams) else TensorParams(*tp)


# ------------------------------------------------------ decomposition


def decomp_coefficient(tp, n1, n2, y):
    """Coefficient of e_{n1} x e_{n2} in the decomposition at y = rho^2.

    Returns
    -------
    coefficient : float
        (-1)^{n2} S_n(y; n1-n2) with n = min(n1, n2).
    density : float
        Square root of the density of dmu(y; n1-n2) in rho = sqrt(y); zero
        for y < 0.
    """
    tp = _tp(tp)
    if n1 < 0 or n2 < 0:
        raise DomainError("n1, n2 must be nonnegative")
    n = min(n1, n2)
    val, meas = decomp_cdh(n, y, n1 - n2, tp.k1, tp.k2)
    dens = math.sqrt(meas.density(math.sqrt(y))) if y > 0 else 0.0
    return (-1) ** n2 * float(val), dens


def decomp_inner_products(tp, r, f, g, nmax=60, tol=1e-11):
    """Inner product of two functions of rho two ways.

    f and g are functions of rho >= 0 living in the principal-series part
    of the tensor product with p = r. Returns (int f conj(g) drho,
    sum_n c_n(f) conj(c_n(g))) where c_n are the coefficients of the
    inverse decomposition, c_n(f) = int S_n(rho^2; r) f(rho) sqrt(m(rho)) drho.
    """
    tp = _tp(tp)
    direct = integrate(lambda x: f(x) * np.conj(g(x)), 0.0, np.inf, tol=tol, vectorized=True,
                       points=[1.0, 4.0]).value
    _, meas = decomp_cdh(0, 0.0, r, tp.k1, tp.k2)

    def sq(x):
        return np.sqrt(meas.density(x))

    total = 0.0
    for n in range(nmax + 1):
        cf = integrate(lambda x: decomp_cdh(n, x * x, r, tp.k1, tp.k2)[0] * f(x) * sq(x),
                       0.0, np.inf, tol=tol, vectorized=True, points=[1.0, 4.0]).value
        cg = integrate(lambda x: decomp_cdh(n, x * x, r, tp.k1, tp.k2)[0] * g(x) * sq(x),
                       0.0, np.inf, tol=tol, vectorized=True, points=[1.0, 4.0]).value
        total += cf * np.conj(cg)
    return direct, total


# ---------------------------------------------- Clebsch-Gordan constants


@dataclass(frozen=True)
class CgConstants:
    """C-, C0, C+ at (rho, x1, x2); C- needs x1 > x2, C+ needs x1 < x2 (else None)."""

    c_minus: complex
    c_zero: complex
    c_plus: complex


def _check_rho(rho):
    if not rho > 0:
        raise PoleError("the Clebsch-Gordan constants need rho > 0")


def _abs_ratio(tp, rho, swap):
    # |Gamma(K-1/2+i rho) / (Gamma(kb-ka+1/2+i rho) Gamma(2 i rho))|
    d = tp.k1 - tp.k2 if swap else tp.k2 - tp.k1
    return math.exp(lngamma(complex(tp.K - 0.5, rho)).real - lngamma(complex(d + 0.5, rho)).real
                    - lngamma(complex(0, 2 * rho)).real)


def cg_constants(tp, rho, x1, x2):
    """C-, C0 and C+ of the parabolic Clebsch-Gordan coefficients.

    C- = (-1)^L (x1-x2)^{1/2-K-i rho} sqrt(G(2k1)/G(2k2))
         |G(K-1/2+i rho)/(G(k1-k2+1/2+i rho) G(2 i rho))| / sqrt(2 pi),
    C+ = (x2-x1)^{1/2-K+i rho} sqrt(G(2k2)/G(2k1))
         |G(K-1/2+i rho)/(G(k2-k1+1/2+i rho) G(2 i rho))| / sqrt(2 pi),
    C0 = (-1)^L sqrt(G(2k1) G(2k2)) G(K-1/2+i rho)
         / (sqrt(2 pi) |G(K-1/2+i rho) G(k1-k2+1/2+i rho)| G(k2-k1+1/2+i rho)),
    with K = k1+k2.
    """
    tp = _tp(tp)
    _check_rho(rho)
    if x1 < 0 or x2 < 0:
        raise DomainError("x1, x2 must be nonnegative")
    K, L = tp.K, tp.L
    lg1, lg2 = special.gammaln(2 * tp.k1), special.gammaln(2 * tp.k2)
    c_minus = c_plus = None
    if x1 > x2:
        c_minus = ((-1) ** L / math.sqrt(2 * math.pi) * math.exp(0.5 * (lg1 - lg2))
                   * _abs_ratio(tp, rho, True) * (x1 - x2) ** complex(0.5 - K, -rho))
    if x1 < x2:
        c_plus = (1 / math.sqrt(2 * math.pi) * math.exp(0.5 * (lg2 - lg1))
                  * _abs_ratio(tp, rho, False) * (x2 - x1) ** complex(0.5 - K, rho))
    lk = lngamma(complex(K - 0.5, rho))
    lp = lngamma(complex(tp.k1 - tp.k2 + 0.5, rho))
    lm = lngamma(complex(tp.k2 - tp.k1 + 0.5, rho))
    c_zero = (-1) ** L / math.sqrt(2 * math.pi) * np.exp(
        0.5 * (lg1 + lg2) + lk - lk.real - lp.real - lm)
    return CgConstants(c_minus, complex(c_zero), c_plus)


def cg_coefficient(tp, rho, x1, x2):
    """Clebsch-Gordan coefficient g(rho; x1, x2).

    C+ e^{x1} phi_{2 rho}^{(2k1-1, 2k2-1)}(x1/(x2-x1)) for x1 < x2, the mirror
    with C- for x1 > x2, and for x1 = x2 = x the pair
    (C0 e^x x^{1/2-K-i rho}, conj(C0) e^x x^{1/2-K+i rho}).
    """
    tp = _tp(tp)
    c = cg_constants(tp, rho, x1, x2)
    if x1 < x2:
        ab = (2 * tp.k1 - 1, 2 * tp.k2 - 1)
        return c.c_plus * math.exp(x1) * jacobi_fn_real(2 * rho, ab, x1 / (x2 - x1))[0]
    if x1 > x2:
        ab = (2 * tp.k2 - 1, 2 * tp.k1 - 1)
        return c.c_minus * math.exp(x2) * jacobi_fn_real(2 * rho, ab, x2 / (x1 - x2))[0]
    if x1 == 0:
        raise DomainError("g is singular at x1 = x2 = 0")
    x = x1
    base = math.exp(x) * x ** (0.5 - tp.K)
    ph = complex(math.cos(rho * math.log(x)), -math.sin(rho * math.log(x)))
    return (c.c_zero * base * ph, c.c_zero.conjugate() * base * ph.conjugate())


def _sqrt_measure(tp, rho):
    """|G(k2-k1+1/2+i rho) G(K-1/2+i rho) G(k1-k2+1/2+i rho) / G(2 i rho)|
    / sqrt(2 pi G(2k1) G(2k2))."""
    lg = (lngamma(complex(tp.k2 - tp.k1 + 0.5, rho)).real + lngamma(complex(tp.K - 0.5, rho)).real
          + lngamma(complex(tp.k1 - tp.k2 + 0.5, rho)).real - lngamma(complex(0, 2 * rho)).real
          - 0.5 * (math.log(2 * math.pi) + special.gammaln(2 * tp.k1) + special.gammaln(2 * tp.k2)))
    return math.exp(lg)


def _quiet(fn):
    def wrapped(*args):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LimitRegimeWarning)
            return fn(*args)
    return wrapped


def _rho_integral(f, rtol=1e-10):
    """int_{1e-6}^Lambda f(rho) drho with the growing cap Lambda.

    Returns (value, Lambda).
    """
    first = integrate(f, RHO_MIN, PANEL, tol=1e-14, rtol=rtol)
    # the integrand is finite at 0, so [0, RHO_MIN] is a one-point rectangle
    total = first.value + RHO_MIN * f(RHO_MIN)
    lam = PANEL
    while True:
        scale = max(abs(total), 1e-12)
        part = integrate(f, lam, lam + PANEL, tol=rtol * scale).value
        total += part
        lam += PANEL
        if abs(part) < 1e-9 * max(abs(total), 1e-12):
            return total, lam
        if lam >= LAMBDA_MAX:
            raise NonConvergenceError(f"rho-integral still growing at Lambda = {lam}",
                                      estimate=total)


def normalization_integral(tp, x1, x2):
    """(-1)^L int g(rho; x1, x2) . psi_{-L}(x2-x1; rho, eps) sqrt(m(rho)) drho.

    The pair at x1 = x2 is contracted bilinearly with the two-vector
    psi_{-L}(0). The value is 1 for every x1, x2 >= 0 not both zero.

    Returns
    -------
    value : complex
    Lambda : float
    """
    tp = _tp(tp)
    L = tp.L

    @_quiet
    def f(rho):
        g = cg_coefficient(tp, rho, x1, x2)
        psi = laguerre_function(-L, x2 - x1, tp.principal(rho))
        if psi.is_pair:
            val = g[0] * psi.pair[0] + g[1] * psi.pair[1]
        else:
            val = g * psi.scalar
        return (-1) ** L * val * _sqrt_measure(tp, rho)

    return _rho_integral(f)


def verify_cg_normalization(tp, x1=0.4, x2=1.6, tol=1e-4):
    """Check the Clebsch-Gordan normalization identity at (x1, x2)."""
    tp = _tp(tp)
    t0 = time.perf_counter()
    val, lam = normalization_integral(tp, x1, x2)
    res = abs(val - 1)
    return VerificationReport("cg-normalization",
                              {"k1": tp.k1, "k2": tp.k2, "x1": x1, "x2": x2},
                              val, 1.0, res, tol, time.perf_counter() - t0,
                              notes={"Lambda": lam})


# ------------------------------------------------------ product formula


@dataclass(frozen=True)
class ProductConstants:
    """d-, d+ (per regime, None otherwise) and d0 at (rho, x1, x2, n1, n2)."""

    d_minus: complex
    d_zero: complex
    d_plus: complex


def product_constants(tp, rho, x1, x2, n1, n2):
    """Constants of the product formula.

    d+ = (x2-x1)^{1/2-K+i rho} |G(K-1/2+i rho) G(k1-k2+n1-n2+1/2+i rho)/G(2 i rho)|^2
         / (n1! n2! G(2k1)),
    d- = (x1-x2)^{1/2-K-i rho} |G(K-1/2+i rho) G(k2-k1+n2-n1+1/2+i rho)/G(2 i rho)|^2
         / (n1! n2! G(2k2)),
    d0 = G(K-1/2+i rho) (k2-k1+1/2-i rho)_{n2-n1} / (n1! n2!).
    """
    tp = _tp(tp)
    _check_rho(rho)
    K = tp.K
    lk = lngamma(complex(K - 0.5, rho))
    l2 = lngamma(complex(0, 2 * rho)).real
    lf = special.gammaln(n1 + 1) + special.gammaln(n2 + 1)
    d_minus = d_plus = None
    if x1 < x2:
        lm = 2 * (lk.real + lngamma(complex(tp.k1 - tp.k2 + n1 - n2 + 0.5, rho)).real - l2)
        d_plus = math.exp(lm - lf - special.gammaln(2 * tp.k1)) * (x2 - x1) ** complex(0.5 - K, rho)
    if x1 > x2:
        lm = 2 * (lk.real + lngamma(complex(tp.k2 - tp.k1 + n2 - n1 + 0.5, rho)).real - l2)
        d_minus = math.exp(lm - lf - special.gammaln(2 * tp.k2)) * (x1 - x2) ** complex(0.5 - K, -rho)
    a = complex(tp.k2 - tp.k1 + 0.5, -rho)
    m = n2 - n1
    # (a)_m for either sign of m
    poch = np.exp(lngamma(a + m) - lngamma(a))
    d_zero = complex(np.exp(lk - lf) * poch)
    return ProductConstants(d_minus, d_zero, d_plus)


def _product_integrand(tp, n1, n2, x1, x2):
    k1, k2, K = tp.k1, tp.k2, tp.K
    if x1 < x2:
        t = x2 - x1
        ab = (2 * k1 - 1, 2 * k2 - 1)

        def f(rho):
            d = product_constants(tp, rho, x1, x2, n1, n2).d_plus
            s = _cdh_poly(n2, rho * rho, k1 - k2 + n1 - n2 + 0.5, K - 0.5, k2 - k1 + 0.5)
            u = hypU(complex(n1 - n2 + k1 - k2 + 0.5, rho), complex(1, 2 * rho), t)
            return d * float(s) * math.exp(x1) * jacobi_fn_real(2 * rho, ab, x1 / t)[0] * u
    elif x1 > x2:
        t = x1 - x2
        ab = (2 * k2 - 1, 2 * k1 - 1)

        def f(rho):
            d = product_constants(tp, rho, x1, x2, n1, n2).d_minus
            s = _cdh_poly(n1, rho * rho, k2 - k1 + n2 - n1 + 0.5, K - 0.5, k1 - k2 + 0.5)
            u = hypU(complex(n2 - n1 + k2 - k1 + 0.5, -rho), complex(1, -2 * rho), t)
            return d * float(s) * math.exp(x2) * jacobi_fn_real(2 * rho, ab, x2 / t)[0] * u
    else:
        x = x1
        if x == 0:
            raise DomainError("the x1 = x2 branch needs x > 0")
        lx = math.log(x)

        def f(rho):
            d0 = product_constants(tp, rho, x, x, n1, n2).d_zero
            s = _cdh_poly(n1, rho * rho, k2 - k1 + n2 - n1 + 0.5, K - 0.5, k1 - k2 + 0.5)
            # d0 x^{-i rho} + conj(d0) x^{+i rho} = 2 Re(d0 e^{-i rho ln x})
            osc = 2 * (d0 * complex(math.cos(rho * lx), -math.sin(rho * lx))).real
            return float(s) * math.exp(x) * x ** (0.5 - K) * osc
    return _quiet(f)


def product_rhs(n1, n2, k1, k2, x1, x2):
    """(1/2pi) times the rho-integral side of the product formula.

    Returns
    -------
    value : complex
    Lambda : float
    """
    tp = TensorParams(k1, k2)
    if x1 < 0 or x2 < 0:
        raise DomainError("x1, x2 must be nonnegative")
    val, lam = _rho_integral(_product_integrand(tp, n1, n2, x1, x2))
    return val / (2 * math.pi), lam


def verify_product_formula(n1, n2, k1, k2, x1, x2, tol=1e-4, atol=1e-5):
    """L_{n1}^{(2k1-1)}(x1) L_{n2}^{(2k2-1)}(x2) against its rho-integral form.

    Relative error against `tol`, switching to absolute error against
    `atol` when |LHS| < 1e-8 (1 + |RHS|).
    """
    t0 = time.perf_counter()
    lhs = float(laguerre(n1, 2 * k1 - 1, x1)) * float(laguerre(n2, 2 * k2 - 1, x2))
    rhs, lam = product_rhs(n1, n2, k1, k2, x1, x2)
    if abs(lhs) < 1e-8 * (1 + abs(rhs)):
        res, mode, tol = abs(rhs - lhs), "absolute", atol
    else:
        res, mode = abs(rhs - lhs) / abs(lhs), "relative"
    return VerificationReport("product-formula",
                              {"n1": n1, "n2": n2, "k1": k1, "k2": k2, "x1": x1, "x2": x2},
                              lhs, rhs, res, tol, time.perf_counter() - t0,
                              notes={"Lambda": lam, "error": mode})


# ---------------------------------------------- Casimir eigen-equation


def cg_recurrence_residual(tp, rho, n1, n2):
    """Residual of the Delta(Omega) eigen-equation at (n1, n2).

    With c_{m1,m2} = (-1)^{m2} S_min(rho^2; m1-m2) and the actions of H, B, C
    in pi+_k1 and pi-_k2,
    (c Delta(Omega))_{n1,n2} = d(n1,n2) c_{n1,n2}
        - C1(n1) B2(n2) c_{n1-1,n2-1} - B1(n1) C2(n2) c_{n1+1,n2+1},
    where d = Omega1 + Omega2 - H1 H2 / 2 and C1(n1) B2(n2) is the coefficient
    of e_{n1-1} x e_{n2-1} in (C x B)(e_{n1} x e_{n2}). The eigenvalue is
    rho^2 + 1/4. Returns (lhs, rhs, scaled residual).
    """
    tp = _tp(tp)
    y = rho * rho
    p1, p2 = RepLabel.positive(tp.k1), RepLabel.negative(tp.k2)
    H1, B1, C1 = (action(p1, g) for g in "HBC")
    H2, B2, C2 = (action(p2, g) for g in "HBC")

    def c(m1, m2):
        if m1 < 0 or m2 < 0:
            return 0.0
        return decomp_coefficient(tp, m1, m2, y)[0]

    diag = p1.casimir + p2.casimir - 0.5 * H1.diag(n1) * H2.diag(n2)
    terms = [diag * c(n1, n2),
             -C1.lower(n1) * B2.lower(n2) * c(n1 - 1, n2 - 1),
             -B1.upper(n1) * C2.upper(n2) * c(n1 + 1, n2 + 1)]
    lhs = sum(terms)
    rhs = (y + 0.25) * c(n1, n2)
    scale = max(sum(abs(v) for v in terms), abs(rhs), 1.0)
    return lhs, rhs, abs(lhs - rhs) / scale


def cg_recurrence_check(tp, rho, n1, n2, tol=1e-10):
    tp = _tp(tp)
    t0 = time.perf_counter()
    lhs, rhs, res = cg_recurrence_residual(tp, rho, n1, n2)
    return VerificationReport("cg-recurrence",
                              {"k1": tp.k1, "k2": tp.k2, "rho": rho, "n1": n1, "n2": n2},
                              lhs, rhs, res, tol, time.perf_counter() - t0)
