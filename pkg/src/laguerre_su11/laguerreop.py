"""The doubly infinite Jacobi operator L(rho, eps) and its Laguerre functions.

L e_k = a_k e_{k+1} + b_k e_k + a_{k-1} e_{k-1} with a_k = |k+eps+1/2+i rho|
and b_k = 2(k+eps). Eigenvectors of L f = -z f come in four families
s, t, u, v built from 1F1 and U. Everything is written in terms of
sigma = i rho (principal series) or sigma = lam + 1/2 (complementary
series); the formulas are analytic in sigma, with |Gamma(alpha)| read as
sqrt(Gamma(alpha) Gamma(alpha - 2 sigma)) and |sin pi(eps+1/2+i rho)|^2 as
sin pi(eps+1/2+sigma) sin pi(eps+1/2-sigma).
"""
import cmath
import math
import time
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg, special

from .errors import BranchCutError, DomainError, LimitRegimeWarning, PoleError, RegimeError
from .hypfun import hyp1f1, hypu_scaled
from .numkernel import integrate, lngamma
from .report import VerificationReport

__all__ = [
    "PrincipalParams",
    "OperatorL",
    "coeffs",
    "SolutionFamily",
    "solution",
    "solution_range",
    "ConnectionCoefficients",
    "connection",
    "wronskian",
    "wronskian_phi_Phi",
    "wronskian_phi_Phi_numeric",
    "LaguerreFunctionValue",
    "laguerre_function",
    "spectral_weight",
    "resolvent_element",
    "finite_section_resolvent",
    "spectral_projection",
    "laguerre_gram",
    "asymptotic_check",
    "LIMIT_RHO",
]

LIMIT_RHO = 1e-3


@dataclass(frozen=True)
class PrincipalParams:
    """Labels (rho, eps) of L, or (lam, eps) in complementary mode.

    Parameters
    ----------
    rho : float
        rho >= 0 (principal mode).
    eps : float
        eps in [0, 1).
    lam : float, optional
        If given, complementary mode with i rho replaced by lam + 1/2;
        requires lam in (-1/2, -eps) for eps < 1/2 or lam in (-1/2, eps-1)
        for eps > 1/2.
    """

    rho: float = 0.0
    eps: float = 0.0
    lam: float = None

    def __post_init__(self):
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "eps", float(self.eps))
        if not 0 <= self.eps < 1:
            raise DomainError(f"eps must lie in [0, 1), got {self.eps}")
        if self.lam is None:
            if self.rho < 0:
                raise DomainError("rho must be nonnegative")
            if self.rho == 0 and self.eps == 0.5:
                raise DomainError("(rho, eps) = (0, 1/2) is reducible and not supported")
        else:
            lam = float(self.lam)
            object.__setattr__(self, "lam", lam)
            hi = -self.eps if self.eps < 0.5 else self.eps - 1
            if self.eps == 0.5 or not -0.5 < lam < hi:
                raise DomainError(f"complementary lam={lam} outside (-1/2, {hi}) for eps={self.eps}")

    @property
    def mode(self):
        return "principal" if self.lam is None else "complementary"

    @property
    def sigma(self):
        return complex(0.0, self.rho) if self.lam is None else complex(self.lam + 0.5, 0.0)

    @property
    def limit_regime(self):
        return self.mode == "principal" and self.rho < LIMIT_RHO

    def a(self, k):
        return _a(k, self.sigma, self.eps)

    def b(self, k):
        return 2.0 * (k + self.eps)

    @property
    def sin_sq(self):
        """|sin pi(eps+1/2+i rho)|^2, continued in sigma."""
        return _sin_sq(self.sigma, self.eps)

    @property
    def casimir(self):
        if self.mode == "principal":
            return self.rho ** 2 + 0.25
        return -self.lam * (1 + self.lam)


def _a(k, sigma, eps):
    x = k + eps + 0.5
    return math.sqrt(((x + sigma) * (x - sigma)).real)


def _sin_sq(sigma, eps):
    x = math.pi * (eps + 0.5)
    return (cmath.sin(x + math.pi * sigma) * cmath.sin(x - math.pi * sigma)).real


def _lngamma_pair(x, y):
    """log sqrt(Gamma(x) Gamma(y)) for a pair with positive product."""
    return 0.5 * (special.loggamma(complex(x)) + special.loggamma(complex(y))).real


def _pow(z, s):
    """Principal z**s."""
    return cmath.exp(s * cmath.log(z))


@dataclass(frozen=True)
class OperatorL:
    """Coefficient access for L and its centered finite sections."""

    params: PrincipalParams

    def coeffs(self, k):
        return self.params.a(k), self.params.b(k)

    def finite_section(self, N):
        """(2N+1)x(2N+1) matrix of L on e_{-N}..e_N."""
        ks = np.arange(-N, N + 1)
        main = 2.0 * (ks + self.params.eps)
        off = np.array([self.params.a(k) for k in ks[:-1]])
        return np.diag(main) + np.diag(off, 1) + np.diag(off, -1)

    def apply(self, f, k):
        """(L f)_k for a callable or mapping f."""
        a, b = self.coeffs(k)
        return a * f(k + 1) + b * f(k) + self.params.a(k - 1) * f(k - 1)


def coeffs(params, k):
    """(a_k, b_k) of L."""
    return OperatorL(params).coeffs(k)


# ------------------------------------------------------------ families


def _s_raw(k, z, sigma, eps):
    al = k + eps + 0.5 + sigma
    pref = cmath.exp(_lngamma_pair(al, al - 2 * sigma) - lngamma(al - 2 * sigma))
    return (-1) ** k * pref * hyp1f1(al, 1 + 2 * sigma, z)


def _t_raw(k, z, sigma, eps):
    be = 0.5 - k - eps - sigma
    pref = cmath.exp(_lngamma_pair(be, be + 2 * sigma) - lngamma(be + 2 * sigma))
    return pref * hyp1f1(be, 1 - 2 * sigma, -z)


def _u_raw(k, z, sigma, eps):
    al = k + eps + 0.5 + sigma
    return (-1) ** k * hypu_scaled(al, 1 + 2 * sigma, z, _lngamma_pair(al, al - 2 * sigma))


def _v_raw(k, z, sigma, eps):
    be = 0.5 - k - eps - sigma
    return hypu_scaled(be, 1 - 2 * sigma, -z, _lngamma_pair(be, be + 2 * sigma))


_RAW = {"s": _s_raw, "t": _t_raw, "u": _u_raw, "v": _v_raw}


def _check_family(family, z):
    if family not in _RAW:
        raise ValueError(f"family must be one of s, t, u, v; got {family!r}")
    z = complex(z)
    if family == "u" and z.imag == 0 and z.real <= 0:
        raise BranchCutError("u_k(z) needs z outside (-inf, 0]")
    if family == "v" and z.imag == 0 and z.real >= 0:
        raise BranchCutError("v_k(z) needs z outside [0, inf)")
    return z


def _warn_limit(params):
    if params.limit_regime and params.rho > 0:
        warnings.warn(f"rho={params.rho} < {LIMIT_RHO}: values come from the integer-b "
                      "limit scheme", LimitRegimeWarning, stacklevel=3)


def solution(family, params, z, k):
    """k-th entry of the eigenvector family s, t, u or v of L f = -z f.

    Parameters
    ----------
    family : {"s", "t", "u", "v"}
    params : PrincipalParams
    z : complex
        Spectral argument; u needs z off (-inf, 0], v needs z off [0, inf).
    k : int

    Returns
    -------
    complex
    """
    z = _check_family(family, z)
    _warn_limit(params)
    return _RAW[family](int(k), z, params.sigma, params.eps)


def _recur(params, z, f_hi, f_lo, k, down):
    """One step of a_k f_{k+1} + (b_k + z) f_k + a_{k-1} f_{k-1} = 0."""
    if down:
        # f_hi = f_{k+1}, f_lo = f_k -> f_{k-1}
        return -(params.a(k) * f_hi + (params.b(k) + z) * f_lo) / params.a(k - 1)
    # f_hi = f_k, f_lo = f_{k-1} -> f_{k+1}
    return -((params.b(k) + z) * f_hi + params.a(k - 1) * f_lo) / params.a(k)


def solution_range(family, params, z, k0, k1):
    """Entries k0..k1 (inclusive) of a family as a complex array.

    u is evaluated at the top two indices and recurred downward, v at the
    bottom two and recurred upward; these are the directions in which each
    is the dominant solution. s and t are evaluated directly.
    """
    z = _check_family(family, z)
    _warn_limit(params)
    k0, k1 = int(k0), int(k1)
    if k1 < k0:
        raise ValueError("empty index range")
    n = k1 - k0 + 1
    raw = _RAW[family]
    sig, eps = params.sigma, params.eps
    out = np.empty(n, dtype=complex)
    if family in "st" or n <= 2:
        for i in range(n):
            out[i] = raw(k0 + i, z, sig, eps)
        return out
    if family == "u":
        out[-1] = raw(k1, z, sig, eps)
        out[-2] = raw(k1 - 1, z, sig, eps)
        for i in range(n - 3, -1, -1):
            k = k0 + i + 1
            out[i] = _recur(params, z, out[i + 2], out[i + 1], k, True)
        return out
    out[0] = raw(k0, z, sig, eps)
    out[1] = raw(k0 + 1, z, sig, eps)
    for i in range(2, n):
        k = k0 + i - 1
        out[i] = _recur(params, z, out[i - 1], out[i - 2], k, False)
    return out


@dataclass(frozen=True)
class SolutionFamily:
    """One eigenvector family at fixed parameters and spectral argument.

    Calling the object with an index evaluates that entry on demand.
    """

    family: str
    params: PrincipalParams
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", _check_family(self.family, self.z))

    def __call__(self, k):
        return _RAW[self.family](int(k), self.z, self.params.sigma, self.params.eps)

    def values(self, k0, k1):
        return solution_range(self.family, self.params, self.z, k0, k1)

    def residual(self, k):
        """|a_k f_{k+1} + (b_k+z) f_k + a_{k-1} f_{k-1}| / max|f|."""
        f = [self(k - 1), self(k), self(k + 1)]
        p = self.params
        r = p.a(k) * f[2] + (p.b(k) + self.z) * f[1] + p.a(k - 1) * f[0]
        return abs(r) / max(abs(x) for x in f)


# ---------------------------------------------------------- connection


@dataclass(frozen=True)
class ConnectionCoefficients:
    """Coefficients of u = A s + B t, v = C s + D t, s = E u + F v, t = G u + H v.

    Entries whose branch factors are undefined at z are None: B on
    (-inf, 0], C on [0, inf), and E..H on the whole real axis.
    """

    A: complex
    B: complex
    C: complex
    D: complex
    E: complex
    F: complex
    G: complex
    H: complex
    xi: int

    def matrix(self, system):
        """2x2 array [[A,B],[C,D]] (system 1) or [[E,F],[G,H]] (system 2)."""
        names = {1: "ABCD", 2: "EFGH"}[system]
        vals = [getattr(self, n) for n in names]
        missing = [n for n, v in zip(names, vals) if v is None]
        if missing:
            raise BranchCutError(f"coefficients {','.join(missing)} undefined at this z")
        return np.array(vals, dtype=complex).reshape(2, 2)


def connection(params, z):
    """Connection coefficients between {s, t} and {u, v} (principal series).

    Principal branches throughout: z^{-2 i rho} = exp(-2 i rho Log z) and
    (-z)^{2 i rho} with Log(-z).
    """
    if params.mode != "principal":
        raise RegimeError("connection coefficients are implemented for the principal series")
    rho, eps = params.rho, params.eps
    if rho == 0:
        raise PoleError("Gamma(+-2 i rho) has a pole at rho = 0")
    z = complex(z)
    ir = 1j * rho
    sp = cmath.sin(math.pi * (eps + 0.5 + ir))
    sm = cmath.sin(math.pi * (eps + 0.5 - ir))
    abs_s = abs(sp)
    g_m = special.gamma(-2 * ir)
    g_p = special.gamma(2 * ir)
    A = g_m
    D = g_p
    B = C = None
    if not (z.imag == 0 and z.real <= 0):
        B = _pow(z, -2 * ir) * cmath.exp(z) * g_p * sp / abs(sm)
    if not (z.imag == 0 and z.real >= 0):
        C = _pow(-z, 2 * ir) * cmath.exp(-z) * g_m * sp / abs(sm)
    xi = int(np.sign(z.imag))
    E = F = G = H = None
    if xi != 0:
        ph = cmath.exp(1j * math.pi * xi * (eps + 0.5 + ir))
        g1p = special.gamma(1 + 2 * ir)
        g1m = special.gamma(1 - 2 * ir)
        E = sm * g1p * ph / math.pi
        F = -abs_s * g1p * cmath.exp(z) * _pow(z, -2 * ir) * ph / math.pi
        G = abs_s * g1m * cmath.exp(-z) * _pow(-z, 2 * ir) * ph / math.pi
        H = -sm * g1m * ph / math.pi
    return ConnectionCoefficients(A, B, C, D, E, F, G, H, xi)


# ---------------------------------------------------------- Wronskians


def wronskian(f, g, k):
    """[f, g]_k = a_k (f_k g_{k+1} - f_{k+1} g_k) for two families."""
    a = f.params.a(k)
    return a * (f(k) * g(k + 1) - f(k + 1) * g(k))


def wronskian_phi_Phi(params, z):
    """Closed form of [phi_z, Phi_z], phi = z^{i rho} u, Phi = (-z)^{-i rho} v.

    Equals pi exp(-i pi xi (eps+1/2)) / |sin pi(eps+1/2+i rho)| with
    xi = sign(Im z).
    """
    z = complex(z)
    if z.imag == 0:
        raise BranchCutError("[phi_z, Phi_z] needs z off the real axis")
    xi = 1 if z.imag > 0 else -1
    return math.pi * cmath.exp(-1j * math.pi * xi * (params.eps + 0.5)) / math.sqrt(params.sin_sq)


def wronskian_phi_Phi_numeric(params, z, k=0):
    """z^{sigma} (-z)^{-sigma} [u(z), v(z)]_k from the families themselves."""
    z = complex(z)
    if z.imag == 0:
        raise BranchCutError("[phi_z, Phi_z] needs z off the real axis")
    u = SolutionFamily("u", params, z)
    v = SolutionFamily("v", params, z)
    sig = params.sigma
    return _pow(z, sig) * _pow(-z, -sig) * wronskian(u, v, k)


# ---------------------------------------------------- Laguerre functions


@dataclass(frozen=True)
class LaguerreFunctionValue:
    """psi_n(x): a scalar for x != 0, a 2-vector at x = 0."""

    scalar: complex = None
    pair: tuple = None

    @property
    def is_pair(self):
        return self.pair is not None

    def norm_sq(self):
        if self.is_pair:
            return sum(abs(c) ** 2 for c in self.pair)
        return abs(self.scalar) ** 2


def laguerre_function(n, x, params):
    """Laguerre function psi_n(x; rho, eps).

    v_n(x) for x < 0, u_n(x) for x > 0 and, at x = 0, the pair
    |Gamma(2 i rho)| (conj t_n(0), t_n(0)).
    """
    x = float(x)
    if x > 0:
        return LaguerreFunctionValue(scalar=solution("u", params, x, n))
    if x < 0:
        return LaguerreFunctionValue(scalar=solution("v", params, x, n))
    if params.mode != "principal" or params.rho == 0:
        raise PoleError("psi_n(0) needs the principal series with rho > 0")
    t0 = solution("t", params, 0.0, n)
    g = abs(special.gamma(2j * params.rho))
    return LaguerreFunctionValue(pair=(g * t0.conjugate(), g * t0))


def spectral_weight(x, params):
    """w(x) = |sin pi(eps+1/2+i rho)|^2 e^{-|x|} / pi^2."""
    return params.sin_sq * np.exp(-np.abs(x)) / math.pi ** 2


# ---------------------------------------------------------- resolvent


def _as_coeffs(f):
    if isinstance(f, dict):
        return {int(k): complex(v) for k, v in f.items() if v != 0}
    raise TypeError("finitely supported vectors are passed as {index: value} dicts")


def resolvent_element(params, z, f, g):
    """<G(z) f, g> from the explicit Green kernel.

    (1/[phi,Phi]) sum_{k<=l} Phi_k phi_l (f_l conj g_k + f_k conj g_l)(1 - delta_kl/2),
    which is <(-L - z)^{-1} f, g>.

    Parameters
    ----------
    f, g : dict
        Finitely supported vectors as {k: value}.
    """
    z = complex(z)
    if z.imag == 0:
        raise BranchCutError("the resolvent kernel needs z off the real axis")
    f, g = _as_coeffs(f), _as_coeffs(g)
    support = sorted(set(f) | set(g))
    if not support:
        return 0j
    k0, k1 = support[0], support[-1]
    sig = params.sigma
    phi = _pow(z, sig) * solution_range("u", params, z, k0, k1 + 1)
    Phi = _pow(-z, -sig) * solution_range("v", params, z, k0, k1 + 1)
    W = params.a(k0) * (phi[0] * Phi[1] - phi[1] * Phi[0])
    total = 0j
    for k in range(k0, k1 + 1):
        for l in range(k, k1 + 1):
            fl, fk = f.get(l, 0), f.get(k, 0)
            gk, gl = g.get(k, 0), g.get(l, 0)
            c = fl * np.conj(gk) + fk * np.conj(gl)
            if c == 0:
                continue
            w = 0.5 if k == l else 1.0
            total += Phi[k - k0] * phi[l - k0] * c * w
    return total / W


def finite_section_resolvent(params, z, f, g, N=200):
    """<(-L_N - z)^{-1} f, g> on the centered section e_{-N}..e_N.

    The tridiagonal system is solved in banded form, so large N is cheap.
    """
    f, g = _as_coeffs(f), _as_coeffs(g)
    k = np.arange(-N, N + 1)
    a = np.array([params.a(int(i)) for i in k[:-1]])
    ab = np.zeros((3, 2 * N + 1), dtype=complex)
    ab[0, 1:] = -a
    ab[1] = -2.0 * (k + params.eps) - complex(z)
    ab[2, :-1] = -a
    fv = np.zeros(2 * N + 1, dtype=complex)
    gv = np.zeros(2 * N + 1, dtype=complex)
    for i, v in f.items():
        fv[i + N] = v
    for i, v in g.items():
        gv[i + N] = v
    return complex(np.vdot(gv, linalg.solve_banded((1, 1), ab, fv)))


# ---------------------------------------------------- spectral measure


_S_MAX = 40.0  # (0, 1] is mapped to s = -ln x in [0, S_MAX]


def _side_integral(h, lo, hi, tol):
    """Integral of h(x) over [lo, hi] within [0, inf).

    The part inside (0, 1] uses x = e^{-s}, which turns the x^{+-2 i rho}
    oscillation near the origin into a bounded-frequency one.
    """
    total = 0.0
    evals = 0
    err = 0.0
    if lo < 1:
        s_hi = _S_MAX if lo == 0 else -math.log(lo)
        s_lo = -math.log(min(hi, 1.0))
        res = integrate(lambda s: h(math.exp(-s)) * math.exp(-s), s_lo, s_hi, tol=tol / 2)
        total = total + res.value
        err += res.error_estimate
        evals += res.evaluations
    if hi > 1:
        res = integrate(h, max(lo, 1.0), hi, tol=tol / 2)
        total = total + res.value
        err += res.error_estimate
        evals += res.evaluations
    return total, err


def _family_block(params, x, k0, k1):
    """psi_k(x) for k0..k1 together with the pairing factor conj(psi)/psi."""
    sig = params.sigma
    if x > 0:
        vals = solution_range("u", params, x, k0, k1)
        pair = _pow(x, 2 * sig)
    else:
        vals = solution_range("v", params, x, k0, k1)
        pair = _pow(-x, -2 * sig)
    return vals, pair


def spectral_projection(params, borel, f, g, tol=1e-9):
    """<E(B) f, g> for the spectral measure of -L.

    Parameters
    ----------
    borel : sequence of (lo, hi)
        Disjoint intervals whose union is B; infinite ends allowed.
    f, g : dict
        Finitely supported vectors {k: value}.
    """
    f, g = _as_coeffs(f), _as_coeffs(g)
    support = sorted(set(f) | set(g))
    if not support:
        return 0j
    k0, k1 = support[0], support[-1]
    fv = np.array([f.get(k, 0) for k in range(k0, k1 + 1)])
    gv = np.array([g.get(k, 0) for k in range(k0, k1 + 1)])
    c = params.sin_sq / math.pi ** 2

    def dens(x):
        vals, pair = _family_block(params, x, k0, k1)
        return c * math.exp(-abs(x)) * pair * np.dot(fv, vals) * np.dot(vals, np.conj(gv))

    total = 0j
    for lo, hi in borel:
        if hi <= lo:
            continue
        if hi > 0:
            val, _ = _side_integral(dens, max(lo, 0.0), hi, tol)
            total += val
        if lo < 0:
            val, _ = _side_integral(lambda y: dens(-y), max(-hi, 0.0), -lo, tol)
            total += val
    return total


def laguerre_gram(params, nmax=5, tol=1e-9):
    """Gram matrix of psi_n, |n| <= nmax, in L^2(R, w dx).

    Computed as the matrix-valued integral of w(x) conj(psi_n) psi_m with
    conj(psi_n(x)) = |x|^{+-2 sigma} psi_n(x) for real x.
    """
    k0, k1 = -nmax, nmax
    c = params.sin_sq / math.pi ** 2

    def dens(x):
        vals, pair = _family_block(params, x, k0, k1)
        return c * math.exp(-abs(x)) * pair * np.outer(vals, vals)

    pos, _ = _side_integral(dens, 0.0, np.inf, tol)
    neg, _ = _side_integral(lambda y: dens(-y), 0.0, np.inf, tol)
    return pos + neg


# ---------------------------------------------------------- asymptotics


def _leading(family, params, z, k):
    rho, eps = params.rho, params.eps
    sig = params.sigma
    kf = float(k)
    if family == "u":
        return ((-1) ** k * math.sqrt(math.pi) * cmath.exp(0.5 * z - cmath.sqrt(4 * (kf + eps) * z))
                * _pow(z, -0.25 - sig) * kf ** -0.25)
    if family == "s":
        return ((-1) ** k / (2 * math.sqrt(math.pi)) * cmath.exp(0.5 * z + cmath.sqrt(4 * (kf + eps) * z))
                * _pow(z, -0.25 - sig) * special.gamma(1 + 2 * sig) * kf ** -0.25)
    if family == "v":
        return (math.sqrt(math.pi) * cmath.exp(-0.5 * z - cmath.sqrt(-4 * (kf - eps) * z))
                * _pow(-z, -0.25 + sig) * kf ** -0.25)
    return (1 / (2 * math.sqrt(math.pi)) * cmath.exp(-0.5 * z + cmath.sqrt(-4 * (kf - eps) * z))
            * _pow(-z, -0.25 + sig) * special.gamma(1 - 2 * sig) * kf ** -0.25)


def asymptotic_check(family, params, z, k_max, tol=0.1):
    """Compare a family with its large-|k| leading term.

    u and s are evaluated at k = k_max, v and t at k = -k_max. The
    residual is |computed/leading - 1|, which decays like k^{-1/2}.
    """
    z = complex(z)
    if z.imag == 0:
        raise DomainError("asymptotics hold for 0 < |arg z| < pi")
    t0 = time.perf_counter()
    idx = k_max if family in "us" else -k_max
    val = solution(family, params, z, idx)
    lead = _leading(family, params, z, k_max)
    resid = abs(val / lead - 1)
    return VerificationReport("asymptotics", {"family": family, "rho": params.rho, "eps": params.eps,
                                              "z": z, "k": idx},
                              val, lead, resid, tol, time.perf_counter() - t0)
