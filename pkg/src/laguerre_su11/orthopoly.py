"""Laguerre and continuous dual Hahn polynomials with their measures."""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import DomainError, RegimeError
from .numkernel import integrate, pochhammer

__all__ = [
    "laguerre",
    "laguerre_series",
    "laguerre_orthonormal",
    "laguerre_coeffs",
    "laguerre_weight",
    "CdhParams",
    "CdhMeasure",
    "cdh",
    "cdh_orthonormal",
    "cdh_measure",
    "decomp_params",
    "decomp_cdh",
    "cdh_shift_residual",
]


def _check_alpha(alpha):
    if not alpha > -1:
        raise DomainError(f"Laguerre order must exceed -1, got {alpha}")


# ------------------------------------------------------------- Laguerre


def laguerre_orthonormal(n, alpha, x):
    """Orthonormal Laguerre polynomial l_n^(alpha)(x).

    Evaluated with the three-term recurrence of the orthonormal family,
    which is stable for all x >= 0.
    """
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.full_like(x, 1.0)
    for j in range(n):
        nxt = ((2 * j + alpha + 1 - x) * cur - math.sqrt(j * (j + alpha)) * prev) \
            / math.sqrt((j + 1) * (j + alpha + 1))
        prev, cur = cur, nxt
    return float(cur) if cur.ndim == 0 else cur


def _norm_ratio(n, alpha):
    # sqrt((alpha+1)_n / n!)
    return math.exp(0.5 * (special.gammaln(alpha + 1 + n) - special.gammaln(alpha + 1)
                           - special.gammaln(n + 1)))


def laguerre(n, alpha, x):
    """Laguerre polynomial L_n^(alpha)(x).

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    alpha : float
        Order, alpha > -1.
    x : float or array_like

    Notes
    -----
    Computed as sqrt((alpha+1)_n/n!) l_n^(alpha)(x) from the orthonormal
    recurrence. `laguerre_series` sums the terminating 1F1 directly and
    agrees to rounding times the series' own cancellation factor.
    """
    return _norm_ratio(n, alpha) * laguerre_orthonormal(n, alpha, x)


def laguerre_coeffs(n, alpha):
    """Monomial coefficients c_0..c_n of L_n^(alpha) (lowest degree first)."""
    _check_alpha(alpha)
    c = np.empty(n + 1)
    # c_j = (alpha+1)_n / n! * (-n)_j / ((alpha+1)_j j!)
    lead = math.exp(special.gammaln(alpha + 1 + n) - special.gammaln(alpha + 1)
                    - special.gammaln(n + 1))
    c[0] = lead
    for j in range(n):
        c[j + 1] = c[j] * (-n + j) / ((alpha + 1 + j) * (j + 1))
    return c


def laguerre_series(n, alpha, x):
    """L_n^(alpha)(x) summed as the terminating 1F1 series.

    Returns (value, cancellation factor sum|terms|/|value|).
    """
    c = laguerre_coeffs(n, alpha)
    x = float(x)
    terms = c * x ** np.arange(n + 1)
    val = float(np.sum(terms))
    size = float(np.sum(np.abs(terms)))
    return val, (size / abs(val) if val != 0 else math.inf)


def laguerre_weight(alpha, x):
    """w^(alpha)(x) = x^alpha e^{-x} / Gamma(alpha+1) on x >= 0."""
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Laguerre weight is defined for x >= 0")
    with np.errstate(divide="ignore"):
        out = np.exp(alpha * np.log(x) - x - special.gammaln(alpha + 1))
    if alpha == 0:
        out = np.exp(-x)
    return float(out) if out.ndim == 0 else out


# ------------------------------------------------- continuous dual Hahn


@dataclass(frozen=True)
class CdhParams:
    """Parameters (a, b, c) of the continuous dual Hahn polynomials.

    The polynomials are symmetric in the three parameters; `ordered`
    returns them with the smallest first, which is the convention the
    measure uses.
    """

    a: float
    b: float
    c: float
    smallest: str = field(init=False)

    def __post_init__(self):
        a, b, c = float(self.a), float(self.b), float(self.c)
        if not (a + b > 0 and a + c > 0 and b + c > 0):
            raise DomainError(f"continuous dual Hahn parameters need positive pairwise sums, got {(a, b, c)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "smallest", "abc"[int(np.argmin([a, b, c]))])

    def ordered(self):
        return tuple(sorted((self.a, self.b, self.c)))


def _as_params(params):
    if isinstance(params, CdhParams):
        return params
    return CdhParams(*params)


def _cdh_poly(n, y, a, b, c):
    """s_n(y; a, b, c) by direct summation of the terminating 3F2.

    Written as sum_j (-n)_j/j! prod_{i<j}((a+i)^2 + y) (a+b+j)_{n-j}
    (a+c+j)_{n-j}, a polynomial in y with no divisions, so it also holds
    where (a+b)_n or (a+c)_n vanishes.
    """
    y = np.asarray(y)
    s = 0.0
    prod_y = np.ones_like(y, dtype=float) if not np.iscomplexobj(y) else np.ones_like(y)
    coef = 1.0
    for j in range(n + 1):
        s = s + coef * prod_y * pochhammer(a + b + j, n - j) * pochhammer(a + c + j, n - j)
        prod_y = prod_y * ((a + j) ** 2 + y)
        coef *= (-n + j) / (j + 1)
    return s


def _cdh_recurrence(n, y, a, b, c):
    # s_{j+1} = (A_j + C_j - a^2 - y) s_j - C_j A_{j-1} s_{j-1}
    # with A_j = (j+a+b)(j+a+c), C_j = j(j+b+c-1)
    y = np.asarray(y, dtype=float)
    prev = np.zeros_like(y)
    cur = np.ones_like(y)
    for j in range(n):
        A = (j + a + b) * (j + a + c)
        C = j * (j + b + c - 1)
        Aprev = (j - 1 + a + b) * (j - 1 + a + c)
        prev, cur = cur, (A + C - a * a - y) * cur - C * Aprev * prev
    return cur


def cdh(n, y, params):
    """Continuous dual Hahn polynomial s_n(y; a, b, c), y = x^2.

    Real y uses the three-term recurrence in n with the parameters sorted
    ascending, which keeps the (a, b, c) symmetry exact and avoids the
    cancellation of the alternating series. Complex y falls back to the
    direct series. Evaluation is in y, so y < 0 (the discrete part of the
    measure) needs no complex arithmetic.
    """
    p = _as_params(params)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b, c = p.ordered()
    if np.iscomplexobj(y):
        out = _cdh_poly(n, y, a, b, c)
    else:
        out = _cdh_recurrence(n, y, a, b, c)
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


def _log_cdh_norm(n, a, b, c):
    # log sqrt(n! (a+b)_n (a+c)_n (b+c)_n)
    def lpoch(x):
        return special.gammaln(x + n) - special.gammaln(x)
    return 0.5 * (special.gammaln(n + 1) + lpoch(a + b) + lpoch(a + c) + lpoch(b + c))


def cdh_orthonormal(n, y, params):
    """S_n(y; a, b, c) = (-1)^n s_n / sqrt(n!(a+b)_n(a+c)_n(b+c)_n)."""
    p = _as_params(params)
    return (-1) ** n * cdh(n, y, p) * math.exp(-_log_cdh_norm(n, p.a, p.b, p.c))


@dataclass(frozen=True)
class CdhMeasure:
    """Orthogonality measure of the orthonormal polynomials S_n.

    Attributes
    ----------
    params : CdhParams
    masses : tuple of (y, weight)
        Point masses at y = -(a+k)^2, k = 0..K (empty if a >= 0).
    """

    params: CdhParams
    masses: tuple

    def density(self, x):
        """Density in x (y = x^2) of the continuous part on x >= 0."""
        a, b, c = self.params.ordered()
        x = np.asarray(x, dtype=float)
        out = np.exp(_log_density(x, a, b, c))
        return float(out) if out.ndim == 0 else out

    def integrate(self, f, tol=1e-11):
        """Integral of f(y) against the measure; f acts on arrays of y."""
        cont = integrate(lambda x: f(x * x) * self.density(x), 0.0, np.inf,
                         tol=tol, vectorized=True, points=[1.0, 4.0])
        disc = sum(w * f(np.array([y]))[0] for y, w in self.masses)
        return cont.value + disc

    def total_mass(self, tol=1e-11):
        return self.integrate(lambda y: np.ones_like(y), tol)


def _log_density(x, a, b, c):
    """log of (1/2pi)|G(a+ix)G(b+ix)G(c+ix)/G(2ix)|^2 / (G(a+b)G(a+c)G(b+c))."""
    x = np.asarray(x, dtype=float)
    out = -math.log(2 * math.pi) - special.gammaln(a + b) - special.gammaln(a + c) \
        - special.gammaln(b + c)
    zero_used = False
    with np.errstate(divide="ignore"):
        for q in (a, b, c):
            if q == 0 and not zero_used:
                # |G(ix)|^2/|G(2ix)|^2 = 4 cosh(pi x), exact at x = 0 too
                out = out + math.log(4.0) + _log_cosh(np.pi * x)
                zero_used = True
            else:
                out = out + 2 * special.loggamma(q + 1j * x).real
        if not zero_used:
            # 1/|G(2ix)|^2 = 2x sinh(2 pi x)/pi
            out = out + np.log(2 * x / np.pi) + _log_sinh(2 * np.pi * x)
    return out


def _log_cosh(t):
    t = np.abs(t)
    return t + np.log1p(np.exp(-2 * t)) - math.log(2.0)


def _log_sinh(t):
    with np.errstate(divide="ignore"):
        return t + np.log1p(-np.exp(-2 * t)) - math.log(2.0)


def cdh_measure(params):
    """The orthogonality measure for the parameter triple.

    The continuous part has density
    (1/2pi)|Gamma(a+ix)Gamma(b+ix)Gamma(c+ix)/Gamma(2ix)|^2
    / (Gamma(a+b)Gamma(a+c)Gamma(b+c)) in x >= 0; for a < 0 (a the
    smallest parameter) point masses sit at y = -(a+k)^2 for 0 <= k with
    a+k < 0.
    """
    p = _as_params(params)
    a, b, c = p.ordered()
    masses = []
    if a < 0:
        K = math.ceil(-a) - 1
        base = (special.gamma(b - a) * special.gamma(c - a)
                / (special.gamma(-2 * a) * special.gamma(b + c)))
        for k in range(K + 1):
            w = base * (-1) ** k
            w *= (pochhammer(2 * a, k) * pochhammer(a + 1, k) * pochhammer(a + b, k)
                  * pochhammer(a + c, k))
            w /= (pochhammer(a, k) * pochhammer(a - b + 1, k) * pochhammer(a - c + 1, k)
                  * math.factorial(k))
            masses.append((-(a + k) ** 2, float(w)))
    return CdhMeasure(p, tuple(masses))


# ------------------------------------------------ tensor decomposition


def _check_regime(k1, k2):
    if not (k1 > 0 and k2 > 0):
        raise DomainError("k1 and k2 must be positive")
    if k1 + k2 < 0.5 or abs(k1 - k2) > 0.5:
        raise RegimeError(
            f"(k1, k2) = ({k1}, {k2}) has discrete components; only k1+k2 >= 1/2, "
            "|k1-k2| <= 1/2 is supported")


def decomp_params(p, k1, k2):
    """Parameter triple of S_n(y; p) in the decomposition of pi+_k1 x pi-_k2."""
    _check_regime(k1, k2)
    K = k1 + k2
    if p <= 0:
        return CdhParams(k1 - k2 + 0.5, K - 0.5, k2 - k1 - p + 0.5)
    return CdhParams(k2 - k1 + 0.5, K - 0.5, k1 - k2 + p + 0.5)


def decomp_cdh(n, y, p, k1, k2):
    """S_n(y; p) and the measure dmu(y; p) of the tensor-product decomposition.

    Returns
    -------
    value : float
    measure : CdhMeasure
    """
    params = decomp_params(p, k1, k2)
    return cdh_orthonormal(n, y, params), cdh_measure(params)


def cdh_shift_residual(n, p, rho, k1, k2):
    """Residual of the parameter-shift identity for the two branches of S_n(y; p).

    For p >= 0,
    s_n(rho^2; k1-k2+1/2, K-1/2, k2-k1-p+1/2)
    = (-1)^p |(k1-k2+1/2+i rho)_p|^2 s_{n-p}(rho^2; k2-k1+1/2, K-1/2, k1-k2+p+1/2);
    p < 0 is the same statement with k1 and k2 exchanged. Evaluated with
    the raw 3F2 sum. Returns |lhs - rhs| / max(|lhs|, |rhs|, 1).
    """
    if p < 0:
        k1, k2, p = k2, k1, -p
    if n < p:
        raise ValueError("identity needs n >= |p|")
    K = k1 + k2
    y = rho * rho
    lhs = _cdh_poly(n, y, k1 - k2 + 0.5, K - 0.5, k2 - k1 - p + 0.5)
    poch = abs(pochhammer(complex(k1 - k2 + 0.5, rho), p)) ** 2
    rhs = (-1) ** p * poch * _cdh_poly(n - p, y, k2 - k1 + 0.5, K - 0.5, k1 - k2 + p + 0.5)
    lhs, rhs = float(lhs), float(rhs)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)
