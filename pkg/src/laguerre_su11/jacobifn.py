"""Jacobi functions, their Plancherel measure and the Jacobi-function transform.

phi_lam(x) = 2F1((a+b+1-i lam)/2, (a+b+1+i lam)/2; a+1; -x) on x >= 0, with
transform pair

    F(lam) = int_0^inf f(x) phi_lam(x) Delta(x) dx,
    f(x)   = (1/2pi) int_0^inf F(lam) phi_lam(x) |c(lam)|^-2 dlam
             - i sum_{lam in D} F(lam) phi_lam(x) Res_{mu=lam} (c(mu)c(-mu))^-1.

All x-integrals are done in t with x = sinh(t)^2, where the weight
Delta(x) dx becomes (2 sinh t)^(2a+1) (2 cosh t)^(2b+1) dt.
"""
import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, NonConvergenceError, PoleError, TruncationWarning
from .hypfun import hyp2f1_neg
from .numkernel import integrate

__all__ = [
    "JacobiParams",
    "PlancherelMeasure",
    "LambdaGrid",
    "SampledTransform",
    "jacobi_fn",
    "jacobi_fn_real",
    "jacobi_weight",
    "c_function",
    "plancherel_density",
    "plancherel",
    "jacobi_transform",
    "sample_transform",
    "jacobi_inverse",
    "parseval_sides",
    "jacobi_ode_residual",
]


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not self.alpha > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")


def _p(params):
    return params if isinstance(params, JacobiParams) else JacobiParams(*params)


def jacobi_fn(lam, params, x):
    """Jacobi function phi_lam^(alpha, beta)(x) for x >= 0."""
    p = _p(params)
    if x < 0:
        raise DomainError("Jacobi functions are evaluated on x >= 0")
    s = p.alpha + p.beta + 1
    lam = complex(lam)
    return hyp2f1_neg(0.5 * (s - 1j * lam), 0.5 * (s + 1j * lam), p.alpha + 1, -float(x))


def _series_vec(a, b, c, zeta, rel=1e-16, cap=4000):
    """2F1(a, b; c; zeta) for arrays a, b, c and a scalar 0 <= |zeta| < 1."""
    term = np.ones(np.broadcast(a, b, c).shape, dtype=complex)
    s = term.copy()
    quiet = 0
    for n in range(cap):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * zeta
        s += term
        if np.max(np.abs(term)) <= rel * np.min(np.abs(s)):
            quiet += 1
            if quiet >= 3:
                return s
        else:
            quiet = 0
    raise NonConvergenceError("vectorized 2F1 series did not converge")


def _phi_real(lams, p, x):
    """phi_lam(x) for an array of real lam with |lam| >= 1e-4 (vectorized).

    Power series for x <= 0.1; above that the connection formula in
    1/(1+x) (x <= 1.5) or in 1/x, whose two terms are complex conjugates
    for real lam, so phi = 2 Re of the first. Both keep the cancellation
    of the summed terms mild for lam up to a few dozen.
    """
    s = p.alpha + p.beta + 1
    a = 0.5 * (s - 1j * lams)
    b = 0.5 * (s + 1j * lams)
    c = p.alpha + 1
    if x <= 0.1:
        return _series_vec(a, b, c, -x).real
    pre = special.loggamma(c) + special.loggamma(b - a) - special.loggamma(b) - special.loggamma(c - a)
    if x <= 1.5:
        ser = _series_vec(a, c - b, a - b + 1, 1 / (1 + x))
        return 2 * (np.exp(pre - a * math.log1p(x)) * ser).real
    ser = _series_vec(a, a - c + 1, a - b + 1, -1 / x)
    return 2 * (np.exp(pre - a * math.log(x)) * ser).real


def jacobi_fn_real(lams, params, x):
    """phi_lam(x) for real lam, vectorized over lam; real output."""
    p = _p(params)
    if x < 0:
        raise DomainError("Jacobi functions are evaluated on x >= 0")
    lams = np.atleast_1d(np.asarray(lams, dtype=float))
    out = np.empty(lams.shape)
    small = np.abs(lams) < 1e-4
    if np.any(~small):
        out[~small] = _phi_real(lams[~small], p, float(x))
    for i in np.flatnonzero(small):
        out[i] = jacobi_fn(lams[i], p, x).real
    return out


def jacobi_weight(params, x):
    """Delta(x) = 2^(2a+2b+1) x^a (1+x)^b."""
    p = _p(params)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Delta is defined on x >= 0")
    out = 2.0 ** (2 * p.alpha + 2 * p.beta + 1) * x ** p.alpha * (1 + x) ** p.beta
    return float(out) if out.ndim == 0 else out


def _log_c(lam, p):
    lam = complex(lam)
    if lam == 0:
        raise PoleError("c(lambda) has a pole at lambda = 0")
    a, b = p.alpha, p.beta
    out = ((a + b + 1 - 1j * lam) * math.log(2) + special.loggamma(a + 1)
           + special.loggamma(1j * lam)
           - special.loggamma(0.5 * (a + b + 1 + 1j * lam))
           - special.loggamma(0.5 * (a - b + 1 + 1j * lam)))
    return out


def c_function(lam, params):
    """Harish-Chandra c-function c_{alpha,beta}(lam), principal powers.

    Zeros of the denominator gammas give c = 0.
    """
    p = _p(params)
    lam = complex(lam)
    if lam == 0 or (lam.real == 0 and lam.imag < 0 and -lam.imag == round(-lam.imag)):
        # Gamma(i lam) poles at i lam = 0, -1, -2, ...
        raise PoleError(f"c(lambda) has a pole at lambda = {lam}")
    a, b = p.alpha, p.beta
    num = 2.0 ** (a + b + 1 - 1j * lam) * special.gamma(a + 1) * special.gamma(1j * lam)
    return num * special.rgamma(0.5 * (a + b + 1 + 1j * lam)) * special.rgamma(0.5 * (a - b + 1 + 1j * lam))


def plancherel_density(lam, params):
    """|c(lam)|^-2 for real lam (vectorized); zero at lam = 0."""
    p = _p(params)
    lam = np.abs(np.asarray(lam, dtype=float))
    out = np.zeros_like(lam)
    nz = lam > 0
    if np.any(nz):
        lc = np.array([_log_c(l, p).real for l in lam[nz]])
        out[nz] = np.exp(-2 * lc)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PlancherelMeasure:
    """Continuous density |c|^-2 on lam >= 0 plus point masses.

    `discrete` holds (lam_j, d_j) with d_j = -i Res_{mu=lam_j} (c(mu)c(-mu))^-1,
    so that f(x) gets the term d_j F(lam_j) phi_{lam_j}(x).
    """

    params: JacobiParams
    discrete: tuple

    def density(self, lam):
        return plancherel_density(lam, self.params)


def _residue(g, center, radius=1e-3, npts=64):
    theta = 2 * np.pi * np.arange(npts) / npts
    w = radius * np.exp(1j * theta)
    return sum(g(center + wi) * wi for wi in w) / npts


def plancherel(params):
    """Plancherel measure of the Jacobi-function transform.

    The discrete set is D = {i(|b|-a-1-2j) : j >= 0, |b|-a-1-2j > 0}; the
    masses are obtained from a 64-point trapezoid rule on a circle of
    radius 1e-3 around each point.
    """
    p = _p(params)
    disc = []
    j = 0
    while abs(p.beta) - p.alpha - 1 - 2 * j > 0:
        lam_j = 1j * (abs(p.beta) - p.alpha - 1 - 2 * j)
        res = _residue(lambda mu: 1 / (c_function(mu, p) * c_function(-mu, p)), lam_j)
        disc.append((lam_j, float((-1j * res).real)))
        j += 1
    return PlancherelMeasure(p, tuple(disc))


@dataclass(frozen=True)
class LambdaGrid:
    """Composite Gauss-Legendre rule on [0, lam_max]."""

    nodes: np.ndarray
    weights: np.ndarray
    lam_max: float

    @classmethod
    def uniform(cls, lam_max, panel=1.0, order=12):
        npan = max(1, int(math.ceil(lam_max / panel)))
        x, w = np.polynomial.legendre.leggauss(order)
        edges = np.linspace(0.0, lam_max, npan + 1)
        nodes = np.concatenate([0.5 * (hi - lo) * x + 0.5 * (hi + lo)
                                for lo, hi in zip(edges[:-1], edges[1:])])
        weights = np.concatenate([0.5 * (hi - lo) * w for lo, hi in zip(edges[:-1], edges[1:])])
        return cls(nodes, weights, float(lam_max))


@dataclass(frozen=True)
class SampledTransform:
    """F sampled on a LambdaGrid together with its values on D."""

    params: JacobiParams
    grid: LambdaGrid
    values: np.ndarray
    discrete: tuple  # (lam_j, d_j, F(lam_j))
    tail: float = 0.0


def _t_max(support):
    if support is None:
        return np.inf
    return math.asinh(math.sqrt(support))


def _l1_scale(f, p, support):
    def g(t):
        sh, ch = math.sinh(t), math.cosh(t)
        return abs(f(sh * sh)) * (2 * sh) ** (2 * p.alpha + 1) * (2 * ch) ** (2 * p.beta + 1)

    return integrate(g, 0.0, _t_max(support), tol=1e-300, rtol=1e-6).value


def jacobi_transform(f, params, lam_grid, support=None, tol=1e-10, scale=None):
    """(F f)(lam) on an array of (possibly complex) lam.

    Parameters
    ----------
    f : callable
        Function of x >= 0.
    lam_grid : array_like or LambdaGrid
    support : float, optional
        Right end of the support of f; without it f must decay.
    tol : float
        Absolute quadrature tolerance in units of `scale`.
    scale : float, optional
        Defaults to int |f| Delta dx, which bounds |F| up to the size of
        phi_lam.
    """
    p = _p(params)
    lams = lam_grid.nodes if isinstance(lam_grid, LambdaGrid) else np.atleast_1d(lam_grid)
    lams = np.asarray(lams, dtype=complex)
    real = bool(np.all(lams.imag == 0))
    s = p.alpha + p.beta + 1
    aa = 0.5 * (s - 1j * lams)
    bb = 0.5 * (s + 1j * lams)

    def integrand(t):
        sh, ch = math.sinh(t), math.cosh(t)
        x = sh * sh
        fx = f(x)
        if fx == 0:
            return np.zeros(len(lams), dtype=complex)
        w = (2 * sh) ** (2 * p.alpha + 1) * (2 * ch) ** (2 * p.beta + 1)
        if real:
            phi = jacobi_fn_real(lams.real, p, x)
        else:
            phi = np.array([hyp2f1_neg(a, b, p.alpha + 1, -x) for a, b in zip(aa, bb)])
        return fx * w * phi

    if scale is None:
        scale = _l1_scale(f, p, support)
    res = integrate(integrand, 0.0, _t_max(support), tol=tol * scale)
    out = np.asarray(res.value)
    if real:
        out = out.real
    return out


def sample_transform(f, params, lam_max=None, panel=2.0, order=12, support=None,
                     tail_rel=1e-9, max_panels=80, tol=1e-12):
    """Sample F on a Gauss-Legendre grid plus the discrete set D.

    Without `lam_max`, panels of width `panel` are added until the last
    one has max |F||c|^-2 below `tail_rel` times the running peak, or |F|
    has dropped to the quadrature noise floor 10 tol int|f|Delta dx.
    """
    p = _p(params)
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights, vals = [], [], []
    peak = 0.0
    tail = np.inf
    k = 0
    scale = _l1_scale(f, p, support)
    while True:
        lo, hi = k * panel, (k + 1) * panel
        ln = 0.5 * panel * x + 0.5 * (lo + hi)
        Fv = jacobi_transform(f, p, ln, support, tol, scale)
        nodes.append(ln)
        weights.append(0.5 * panel * w)
        vals.append(Fv)
        mag = np.max(np.abs(Fv) * plancherel_density(ln, p))
        peak = max(peak, mag)
        tail = mag / peak if peak > 0 else 0.0
        k += 1
        if lam_max is not None:
            if hi >= lam_max:
                break
        elif tail < tail_rel or np.max(np.abs(Fv)) <= 10 * tol * scale or k >= max_panels:
            break
    grid = LambdaGrid(np.concatenate(nodes), np.concatenate(weights), k * panel)
    disc = tuple((lam_j, d_j, complex(jacobi_transform(f, p, [lam_j], support, tol, scale)[0]))
                 for lam_j, d_j in plancherel(p).discrete)
    return SampledTransform(p, grid, np.concatenate(vals), disc, float(tail))


def jacobi_inverse(F, params, x, tol=1e-6):
    """Inverse transform at x from a SampledTransform.

    Warns with TruncationWarning when the tail estimate of the sampled
    range exceeds `tol`.
    """
    p = _p(params)
    if F.tail > tol:
        warnings.warn(f"transform tail {F.tail:.2g} above {tol:.2g}; increase lam_max",
                      TruncationWarning, stacklevel=2)
    lams = F.grid.nodes
    phi = jacobi_fn_real(lams, p, x)
    cont = np.sum(F.grid.weights * F.values * phi * plancherel_density(lams, p)) / (2 * math.pi)
    disc = sum(d_j * F_j * jacobi_fn(l_j, p, x) for l_j, d_j, F_j in F.discrete)
    out = cont + disc
    return float(out.real) if abs(complex(out).imag) <= 1e-12 * max(1.0, abs(out)) else complex(out)


def parseval_sides(f, F, params, support=None, tol=1e-12):
    """(int |f|^2 Delta dx, (1/2pi) int |F|^2 dnu) for a SampledTransform F."""
    p = _p(params)

    def g(t):
        sh, ch = math.sinh(t), math.cosh(t)
        return abs(f(sh * sh)) ** 2 * (2 * sh) ** (2 * p.alpha + 1) * (2 * ch) ** (2 * p.beta + 1)

    lhs = integrate(g, 0.0, _t_max(support), tol=1e-300, rtol=tol).value
    lams = F.grid.nodes
    rhs = np.sum(F.grid.weights * np.abs(F.values) ** 2 * plancherel_density(lams, p)) / (2 * math.pi)
    rhs += sum(d_j * abs(F_j) ** 2 for _, d_j, F_j in F.discrete)
    return float(lhs), float(rhs)


def jacobi_ode_residual(lam, params, x, h=1e-3):
    """Scaled finite-difference residual of the Jacobi differential equation.

    Evaluates -x(1+x)phi'' - [a+1+(a+b+2)x]phi' - ((a+b+1)^2+lam^2)/4 phi with
    central differences of step h and divides by the sum of the term
    magnitudes.
    """
    p = _p(params)
    f0 = jacobi_fn(lam, p, x)
    fp = jacobi_fn(lam, p, x + h)
    fm = jacobi_fn(lam, p, x - h)
    d1 = (fp - fm) / (2 * h)
    d2 = (fp - 2 * f0 + fm) / (h * h)
    t2 = -x * (1 + x) * d2
    t1 = -(p.alpha + 1 + (p.alpha + p.beta + 2) * x) * d1
    t0 = -0.25 * ((p.alpha + p.beta + 1) ** 2 + complex(lam) ** 2) * f0
    return abs(t2 + t1 + t0) / (abs(t2) + abs(t1) + abs(t0))
