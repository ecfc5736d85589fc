"""Gamma-family kernels and quadrature engines.

Everything else in the package is built on the handful of routines here:
the complex log-gamma function, the Pochhammer symbol, an adaptive
Gauss-Kronrod integrator and Gauss-Laguerre rules.
"""
import heapq
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, NonConvergenceError, PoleError

__all__ = [
    "QuadratureRule",
    "IntegralEstimate",
    "lngamma",
    "gamma_abs",
    "pochhammer",
    "integrate",
    "gauss_laguerre",
]


def _is_pole(z):
    z = np.asarray(z, dtype=complex)
    return np.any((z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real)))


def lngamma(z):
    """Principal branch of log Gamma(z).

    Parameters
    ----------
    z : complex or array_like
        Argument, not a nonpositive integer.

    Returns
    -------
    complex or ndarray
        The branch of log Gamma that is analytic on the plane cut along
        the negative real axis (so ``exp(lngamma(z)) == Gamma(z)``).
    """
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    out = special.loggamma(np.asarray(z, dtype=complex))
    return complex(out) if out.ndim == 0 else out


def gamma_abs(z):
    """|Gamma(z)|, evaluated through the real part of `lngamma`."""
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    out = np.exp(special.loggamma(np.asarray(z, dtype=complex)).real)
    return float(out) if out.ndim == 0 else out


def pochhammer(a, n):
    """Rising factorial (a)_n = a(a+1)...(a+n-1).

    Negative `n` is accepted and means Gamma(a+n)/Gamma(a), that is
    1/((a-1)(a-2)...(a+n)).
    """
    n = int(n)
    out = 1.0
    if n >= 0:
        for j in range(n):
            out *= a + j
        return out
    for j in range(1, -n + 1):
        out /= a - j
    return out


@dataclass(frozen=True)
class QuadratureRule:
    """Fixed nodes and positive weights.

    Attributes
    ----------
    nodes, weights : ndarray
    domain : str
        ``"finite"`` or ``"semi-infinite"`` (weight x^alpha e^{-x} absorbed).
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: str = "finite"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape:
            raise ValueError("nodes and weights differ in length")
        if np.any(weights <= 0):
            raise ValueError("weights must be strictly positive")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def apply(self, f):
        """Sum of w_i f(x_i); `f` is called once on the node array."""
        return np.tensordot(self.weights, np.asarray(f(self.nodes)), axes=1)


@dataclass(frozen=True)
class IntegralEstimate:
    value: complex
    error_estimate: float
    evaluations: int


def gauss_laguerre(n, alpha=0.0):
    """n-point Gauss rule for the weight x^alpha e^{-x} on [0, inf).

    Exact for polynomials of degree <= 2n-1. The weights sum to
    Gamma(alpha+1), not to one.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= -1:
        raise DomainError("alpha must exceed -1")
    x, w = special.roots_genlaguerre(int(n), float(alpha))
    return QuadratureRule(x, w, "semi-infinite")


# Kronrod 15 / Gauss 7 pair (QUADPACK qk15 constants).
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[[13, 11, 9]] = _WG[:3]
_WG15[7] = _WG[3]
_EPS = np.finfo(float).eps


def _eval(g, x, vectorized):
    if vectorized:
        return np.asarray(g(x))
    return np.array([g(xi) for xi in x])


def _gk15(g, a, b, vectorized):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = _eval(g, c + h * _NODES, vectorized)
    resk = h * np.tensordot(_WK, fx, axes=1)
    resg = h * np.tensordot(_WG15, fx, axes=1)
    mean = resk / (2 * h) if h != 0 else resk
    resabs = abs(h) * np.tensordot(_WK, np.abs(fx), axes=1)
    resasc = abs(h) * np.tensordot(_WK, np.abs(fx - mean), axes=1)
    err = np.abs(resk - resg)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    err = np.maximum(err, 50 * _EPS * resabs)
    return resk, float(np.max(err))


def _map_infinite(f, a, b):
    """Return (g, lo, hi) with the substitution x = a - ln u (or its mirror)."""
    if np.isfinite(a) and b == np.inf:
        return (lambda u: f(a - np.log(u)) / u), 0.0, 1.0
    if a == -np.inf and np.isfinite(b):
        return (lambda u: f(b + np.log(u)) / u), 0.0, 1.0
    return f, a, b


def integrate(f, a, b, tol=1e-9, rtol=0.0, *, points=None, vectorized=False,
              max_intervals=5000):
    """Adaptive Gauss-Kronrod quadrature of f over [a, b].

    Parameters
    ----------
    f : callable
        Integrand. Scalar, complex or array valued. With ``vectorized=True``
        it is called on an array of 15 abscissae and must return an array
        whose leading axis runs over them.
    a, b : float
        Limits; either may be infinite. Semi-infinite ranges are mapped to
        (0, 1] with x = a - ln u, which suits exponentially decaying
        integrands. Endpoint singularities x^s with s > -1 are handled by
        repeated bisection toward the endpoint (nodes never touch it).
    tol, rtol : float
        Absolute and relative error targets; convergence means
        ``error <= max(tol, rtol*|value|)``.
    points : sequence of float, optional
        Interior break points.

    Returns
    -------
    IntegralEstimate

    Raises
    ------
    NonConvergenceError
        Carries the best estimate and its error bound.
    """
    if not tol > 0 and not rtol > 0:
        raise ValueError("a positive tolerance is required")
    if a == b:
        return IntegralEstimate(0.0, 0.0, 0)
    if a > b:
        res = integrate(f, b, a, tol, rtol, points=points, vectorized=vectorized,
                        max_intervals=max_intervals)
        return IntegralEstimate(-res.value, res.error_estimate, res.evaluations)
    if a == -np.inf and b == np.inf:
        pts = sorted(points or [0.0])
        left = integrate(f, -np.inf, pts[0], tol / 2, rtol, vectorized=vectorized,
                         max_intervals=max_intervals)
        right = integrate(f, pts[0], np.inf, tol / 2, rtol, points=pts[1:],
                          vectorized=vectorized, max_intervals=max_intervals)
        return IntegralEstimate(left.value + right.value,
                                left.error_estimate + right.error_estimate,
                                left.evaluations + right.evaluations)
    if np.isinf(a) or np.isinf(b):
        finite_pts = sorted(p for p in (points or []) if a < p < b)
        if finite_pts:
            # integrate the finite part directly, map only the tail
            if b == np.inf:
                head = integrate(f, a, finite_pts[-1], tol / 2, rtol, points=finite_pts[:-1],
                                 vectorized=vectorized, max_intervals=max_intervals)
                tail = integrate(f, finite_pts[-1], np.inf, tol / 2, rtol,
                                 vectorized=vectorized, max_intervals=max_intervals)
            else:
                tail = integrate(f, -np.inf, finite_pts[0], tol / 2, rtol,
                                 vectorized=vectorized, max_intervals=max_intervals)
                head = integrate(f, finite_pts[0], b, tol / 2, rtol, points=finite_pts[1:],
                                 vectorized=vectorized, max_intervals=max_intervals)
            return IntegralEstimate(head.value + tail.value,
                                    head.error_estimate + tail.error_estimate,
                                    head.evaluations + tail.evaluations)
        g, lo, hi = _map_infinite(f, a, b)
        edges = [lo, hi]
    else:
        g = f
        edges = [a] + sorted(p for p in (points or []) if a < p < b) + [b]

    heap = []
    total = 0.0
    total_err = 0.0
    nevals = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(g, lo, hi, vectorized)
        nevals += 15
        total = total + val
        total_err += err
        heapq.heappush(heap, (-err, lo, hi, val))
    frozen_err = 0.0

    def target():
        return max(tol, rtol * float(np.max(np.abs(total))))

    while total_err + frozen_err > target():
        if len(heap) + 1 > max_intervals or not heap:
            raise NonConvergenceError(
                f"integrate: error {total_err + frozen_err:.3g} above target {target():.3g}",
                estimate=total, error=total_err + frozen_err)
        negerr, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or (hi - lo) < 1e-14 * max(abs(lo), abs(hi), 1e-300):
            # interval cannot be split any further: accept its error
            frozen_err += -negerr
            total_err -= -negerr
            continue
        v1, e1 = _gk15(g, lo, mid, vectorized)
        v2, e2 = _gk15(g, mid, hi, vectorized)
        nevals += 30
        total = total - val + v1 + v2
        total_err += e1 + e2 + negerr
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
    value = total
    if np.ndim(value) == 0:
        value = complex(value) if np.iscomplexobj(value) else float(value)
    return IntegralEstimate(value, max(total_err + frozen_err, 0.0), nevals)


def log_gamma_ratio_abs(num, den):
    """log(prod |Gamma(num_i)| / prod |Gamma(den_j)|), computed in log space."""
    out = 0.0
    for z in num:
        out += special.loggamma(complex(z)).real
    for z in den:
        out -= special.loggamma(complex(z)).real
    return out


def sqrt_gamma_pair(z1, z2):
    """sqrt(Gamma(z1) Gamma(z2)) for a pair whose product is positive.

    For conjugate arguments this is |Gamma(z1)|; for two real arguments of
    equal gamma sign it is the positive geometric mean.
    """
    z1 = complex(z1)
    z2 = complex(z2)
    if z1.imag == 0 and z2.imag == 0:
        s1 = special.gammasgn(z1.real)
        s2 = special.gammasgn(z2.real)
        if s1 * s2 <= 0:
            raise DomainError("gamma product is not positive")
        return math.exp(0.5 * (special.gammaln(z1.real) + special.gammaln(z2.real)))
    return math.exp(0.5 * (special.loggamma(z1) + special.loggamma(z2)).real)
