"""Unitary series of su(1,1) as tridiagonal actions, and polynomial realizations.

Commutation relations [H,B] = 2B, [H,C] = -2C, [B,C] = H; Casimir
Omega = -(H^2 + 2H + 4CB)/4; parabolic element X = -H + B - C.
"""
import math
import time
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.signal import convolve2d

from .errors import DomainError
from .jacobifn import jacobi_fn
from .laguerreop import PrincipalParams
from .report import VerificationReport

__all__ = [
    "RepLabel",
    "TridiagonalAction",
    "GENERATORS",
    "action",
    "truncation",
    "commutator_check",
    "star_check",
    "casimir_check",
    "hx_identity_check",
    "theta_check",
    "x_intertwine_check",
    "PolyOperator",
    "BivariatePolyOperator",
    "diff_realization",
    "realized_casimir",
    "realization_eigen_check",
    "realization_commutator_check",
    "delta_omega",
    "delta_omega_composed",
    "xi_residual",
    "euler_residual",
]

GENERATORS = ("H", "B", "C", "X", "Omega")


@dataclass(frozen=True)
class RepLabel:
    """Label of an irreducible unitary representation.

    Use the constructors `positive(k)`, `negative(k)`, `principal(rho, eps)`
    and `complementary(lam, eps)`.
    """

    series: str
    k: float = None
    rho: float = None
    eps: float = None
    lam: float = None

    def __post_init__(self):
        if self.series in ("positive", "negative"):
            if self.k is None or not self.k > 0:
                raise DomainError("discrete series need k > 0")
        elif self.series == "principal":
            PrincipalParams(self.rho, self.eps)
        elif self.series == "complementary":
            PrincipalParams(eps=self.eps, lam=self.lam)
        else:
            raise DomainError(f"unknown series {self.series!r}")

    @classmethod
    def positive(cls, k):
        return cls("positive", k=float(k))

    @classmethod
    def negative(cls, k):
        return cls("negative", k=float(k))

    @classmethod
    def principal(cls, rho, eps):
        return cls("principal", rho=float(rho), eps=float(eps))

    @classmethod
    def complementary(cls, lam, eps):
        return cls("complementary", lam=float(lam), eps=float(eps))

    @property
    def bilateral(self):
        """True when the basis is indexed by all integers."""
        return self.series in ("principal", "complementary")

    @property
    def casimir(self):
        if self.series in ("positive", "negative"):
            return self.k * (1 - self.k)
        if self.series == "principal":
            return self.rho ** 2 + 0.25
        return -self.lam * (1 + self.lam)

    def indices(self, N):
        return np.arange(-N, N + 1) if self.bilateral else np.arange(0, N + 1)

    def describe(self):
        if self.series in ("positive", "negative"):
            return {"series": self.series, "k": self.k}
        if self.series == "principal":
            return {"series": self.series, "rho": self.rho, "eps": self.eps}
        return {"series": self.series, "lam": self.lam, "eps": self.eps}


@dataclass(frozen=True)
class TridiagonalAction:
    """Y e_n = lower(n) e_{n-1} + diag(n) e_n + upper(n) e_{n+1}.

    `bilateral` marks index range Z rather than Z_{>=0}.
    """

    lower: callable
    diag: callable
    upper: callable
    bilateral: bool = False

    def matrix(self, indices):
        """M[i, j] = coefficient of e_{indices[i]} in Y e_{indices[j]}."""
        idx = list(indices)
        n = len(idx)
        M = np.zeros((n, n))
        for j, m in enumerate(idx):
            M[j, j] = self.diag(m)
            if j > 0:
                M[j - 1, j] = self.lower(m)
            if j < n - 1:
                M[j + 1, j] = self.upper(m)
        return M

    def combine(self, other, a=1.0, b=1.0):
        """a*self + b*other."""
        return TridiagonalAction(lambda n: a * self.lower(n) + b * other.lower(n),
                                 lambda n: a * self.diag(n) + b * other.diag(n),
                                 lambda n: a * self.upper(n) + b * other.upper(n),
                                 self.bilateral)


def _zero(n):
    return 0.0


def _sqrt0(v):
    return math.sqrt(v) if v > 0 else 0.0


def _base_actions(label):
    s = label.series
    if s == "positive":
        k = label.k
        return {"H": TridiagonalAction(_zero, lambda n: 2 * (k + n), _zero),
                "B": TridiagonalAction(_zero, _zero, lambda n: _sqrt0((n + 1) * (2 * k + n))),
                "C": TridiagonalAction(lambda n: -_sqrt0(n * (2 * k + n - 1)), _zero, _zero)}
    if s == "negative":
        k = label.k
        return {"H": TridiagonalAction(_zero, lambda n: -2 * (k + n), _zero),
                "B": TridiagonalAction(lambda n: -_sqrt0(n * (2 * k + n - 1)), _zero, _zero),
                "C": TridiagonalAction(_zero, _zero, lambda n: _sqrt0((n + 1) * (2 * k + n)))}
    e = label.eps
    if s == "principal":
        r = label.rho
        up = lambda n: abs(complex(n + e + 0.5, r))  # noqa: E731
        lo = lambda n: -abs(complex(n + e - 0.5, r))  # noqa: E731
    else:
        lm = label.lam
        up = lambda n: math.sqrt((n + e + 1 + lm) * (n + e - lm))  # noqa: E731
        lo = lambda n: -math.sqrt((n + e + lm) * (n + e - lm - 1))  # noqa: E731
    return {"H": TridiagonalAction(_zero, lambda n: 2 * (e + n), _zero, True),
            "B": TridiagonalAction(_zero, _zero, up, True),
            "C": TridiagonalAction(lo, _zero, _zero, True)}


def action(label, gen):
    """Tridiagonal action of a generator in the representation `label`.

    X is assembled as -H + B - C and Omega is the diagonal Casimir scalar.
    """
    if gen not in GENERATORS:
        raise DomainError(f"generator must be one of {GENERATORS}")
    base = _base_actions(label)
    if gen in base:
        return base[gen]
    if gen == "X":
        return base["H"].combine(base["B"], -1.0, 1.0).combine(base["C"], 1.0, -1.0)
    w = label.casimir
    return TridiagonalAction(_zero, lambda n: w, _zero, label.bilateral)


def truncation(label, N):
    """Dense truncations of H, B, C, X, Omega on the window of `label.indices(N)`."""
    idx = label.indices(N)
    return {g: action(label, g).matrix(idx) for g in GENERATORS}


def _interior(label, N):
    """Rows whose stencils stay at distance >= 2 from the truncation edges."""
    idx = label.indices(N)
    keep = idx <= N - 2
    if label.bilateral:
        keep &= idx >= -N + 2
    return keep


def _report(suite, label, N, residual, tol, t0, extra=None):
    inputs = dict(label.describe())
    inputs["N"] = N
    if extra:
        inputs.update(extra)
    return VerificationReport(suite, inputs, residual, 0.0, residual, tol, time.perf_counter() - t0)


def _max_interior(mats, rows):
    return max(float(np.max(np.abs(M[rows]))) for M in mats)


def commutator_check(label, N=20, tol=1e-12):
    """[H,B] = 2B, [H,C] = -2C, [B,C] = H and the Casimir formula on interior rows."""
    if N < 4:
        raise DomainError("N must be at least 4")
    t0 = time.perf_counter()
    T = truncation(label, N)
    H, B, C, Om = T["H"], T["B"], T["C"], T["Omega"]
    rows = _interior(label, N)
    res = _max_interior([H @ B - B @ H - 2 * B,
                         H @ C - C @ H + 2 * C,
                         B @ C - C @ B - H,
                         Om + 0.25 * (H @ H + 2 * H + 4 * C @ B)], rows)
    return _report("rep-commutators", label, N, res, tol, t0)


def star_check(label, N=20, tol=1e-12):
    """B* = -C: truncated B equals minus the transpose of truncated C."""
    t0 = time.perf_counter()
    T = truncation(label, N)
    rows = _interior(label, N)
    res = _max_interior([T["B"] + T["C"].T, T["X"] - T["X"].T], rows)
    return _report("rep-star", label, N, res, tol, t0)


def casimir_check(label, N=20, tol=1e-12):
    """-(H^2 + 2H + 4CB)/4 minus the series scalar, on interior rows."""
    t0 = time.perf_counter()
    T = truncation(label, N)
    H, B, C = T["H"], T["B"], T["C"]
    om = -0.25 * (H @ H + 2 * H + 4 * C @ B)
    rows = _interior(label, N)
    res = _max_interior([om - label.casimir * np.eye(len(H))], rows)
    return _report("rep-casimir", label, N, res, tol, t0)


def hx_identity_check(label, N=20, tol=1e-12):
    """B = [H,X]/4 + X/2 + H/2 and C = [H,X]/4 - X/2 - H/2."""
    t0 = time.perf_counter()
    T = truncation(label, N)
    H, B, C, X = T["H"], T["B"], T["C"], T["X"]
    HX = H @ X - X @ H
    rows = _interior(label, N)
    res = _max_interior([B - (0.25 * HX + 0.5 * X + 0.5 * H),
                         C - (0.25 * HX - 0.5 * X - 0.5 * H)], rows)
    return _report("rep-hx-identity", label, N, res, tol, t0)


_THETA = {"H": ("H", -1.0), "B": ("C", 1.0), "C": ("B", 1.0)}


def theta_check(k, N=20, degree=10, tol=1e-12):
    """pi+_k(theta(Y)) = pi-_k(Y) for theta(H) = -H, theta(B) = C, theta(C) = B.

    Checked on the tridiagonal actions and on the differential realizations
    (applied to monomials up to `degree`).
    """
    t0 = time.perf_counter()
    pos, neg = RepLabel.positive(k), RepLabel.negative(k)
    idx = pos.indices(N)
    res = 0.0
    for Y, (Z, sgn) in _THETA.items():
        d = sgn * action(pos, Z).matrix(idx) - action(neg, Y).matrix(idx)
        res = max(res, float(np.max(np.abs(d))))
        for m in range(degree + 1):
            p = np.zeros(m + 1)
            p[m] = 1.0
            a = diff_realization("positive", k, Z).apply(p) * sgn
            b = diff_realization("negative", k, Y).apply(p)
            res = max(res, _poly_diff(a, b))
    return VerificationReport("rep-theta", {"k": k, "N": N, "degree": degree}, res, 0.0,
                              res, tol, time.perf_counter() - t0)


def x_intertwine_check(label, N=20, tol=1e-12):
    """pi+-_k(X) against the Laguerre recurrence of l_n^(2k-1) (multiplication by -+x).

    Compares the tridiagonal coefficients entrywise and, as a second route,
    evaluates sum_m X[m, n] l_m(x) + -x l_n(x) at a few x for interior n.
    """
    from .orthopoly import laguerre_orthonormal

    if label.series not in ("positive", "negative"):
        raise DomainError("the Laguerre intertwiner exists for the discrete series")
    t0 = time.perf_counter()
    k = label.k
    al = 2 * k - 1
    sgn = 1.0 if label.series == "positive" else -1.0  # X ~ M_{-sgn x}
    idx = label.indices(N)
    X = action(label, "X").matrix(idx)
    J = np.zeros_like(X)  # matrix of M_{-x} in the basis l_n
    for j, n in enumerate(idx):
        J[j, j] = -(2 * n + al + 1)
        if j + 1 < len(idx):
            J[j + 1, j] = math.sqrt((n + 1) * (al + n + 1))
        if j > 0:
            J[j - 1, j] = math.sqrt(n * (n + al))
    res = float(np.max(np.abs(X - sgn * J)))
    rows = _interior(label, N)
    for x in (0.3, 1.7, 5.0):
        l = np.array([laguerre_orthonormal(int(n), al, x) for n in idx])
        lhs = X.T @ l  # sum_m X[m, n] l_m(x)
        scale = np.max(np.abs(l)) * (2 * N + al + 1 + x)
        res = max(res, float(np.max(np.abs(lhs + sgn * x * l)[rows])) / scale)
    return _report("x-intertwine", label, N, res, tol, t0)


# ------------------------------------------------- polynomial realizations


def _trim(p):
    p = np.atleast_1d(np.asarray(p, dtype=float))
    return p


def _poly_diff(a, b):
    n = max(len(a), len(b))
    a = np.pad(a, (0, n - len(a)))
    b = np.pad(b, (0, n - len(b)))
    return float(np.max(np.abs(a - b))) if n else 0.0


@dataclass(frozen=True)
class PolyOperator:
    """c2(x) p'' + c1(x) p' + c0(x) p with polynomial coefficients.

    Coefficient arrays are dense and lowest degree first.
    """

    c2: np.ndarray
    c1: np.ndarray
    c0: np.ndarray

    def apply(self, p):
        p = _trim(p)
        out = npoly.polymul(self.c0, p)
        if len(p) > 1:
            out = npoly.polyadd(out, npoly.polymul(self.c1, npoly.polyder(p)))
        if len(p) > 2:
            out = npoly.polyadd(out, npoly.polymul(self.c2, npoly.polyder(p, 2)))
        return np.asarray(out, dtype=float)

    def __call__(self, p):
        return self.apply(p)

    def apply_axis(self, P, axis):
        """Act on one variable of a bivariate coefficient grid P[i, j] ~ x1^i x2^j."""
        P = np.asarray(P, dtype=float)
        if axis == 1:
            return self.apply_axis(P.T, 0).T
        cols = [self.apply(P[:, j]) for j in range(P.shape[1])]
        n = max(len(c) for c in cols)
        return np.stack([np.pad(c, (0, n - len(c))) for c in cols], axis=1)


def diff_realization(series, k, gen):
    """Second-order differential operator realizing H, B or C on polynomials.

    positive: H = -2x D^2 - 2(2k-x) D + 2k, B = -x D^2 - 2(k-x) D + (2k-x),
    C = x D^2 + 2k D; negative follows from H -> -H, B <-> C.
    """
    if not k > 0:
        raise DomainError("k must be positive")
    pos = {
        "H": PolyOperator(np.array([0.0, -2.0]), np.array([-4 * k, 2.0]), np.array([2 * k])),
        "B": PolyOperator(np.array([0.0, -1.0]), np.array([-2 * k, 2.0]), np.array([2 * k, -1.0])),
        "C": PolyOperator(np.array([0.0, 1.0]), np.array([2 * k]), np.array([0.0])),
    }
    if gen not in pos:
        raise DomainError("realizations exist for H, B and C")
    if series == "positive":
        return pos[gen]
    if series == "negative":
        Z, sgn = _THETA[gen]
        op = pos[Z]
        return PolyOperator(sgn * op.c2, sgn * op.c1, sgn * op.c0)
    raise DomainError("realizations exist for the discrete series")


def realization_eigen_check(k, nmax=10, tol=1e-12):
    """pi+_k(H) l_n^(2k-1) = 2(k+n) l_n^(2k-1), coefficientwise for n <= nmax.

    Residuals are scaled by the largest coefficient of 2(k+n) l_n.
    """
    from .orthopoly import laguerre_coeffs

    t0 = time.perf_counter()
    H = diff_realization("positive", k, "H")
    res = 0.0
    for n in range(nmax + 1):
        p = laguerre_coeffs(n, 2 * k - 1)
        rhs = 2 * (k + n) * p
        res = max(res, _poly_diff(H(p), rhs) / max(1.0, float(np.max(np.abs(rhs)))))
    return VerificationReport("diff-realization", {"k": k, "nmax": nmax, "check": "H-eigen"},
                              res, 0.0, res, tol, time.perf_counter() - t0)


def realization_commutator_check(series, k, degree=10, tol=1e-12):
    """Commutation relations of the realized H, B, C on monomials up to `degree`.

    Residuals are scaled by the largest coefficient of the compared sides.
    """
    t0 = time.perf_counter()
    H, B, C = (diff_realization(series, k, g) for g in "HBC")
    res = 0.0
    for d in range(degree + 1):
        p = np.zeros(d + 1)
        p[d] = 1.0
        pairs = [(H(B(p)), npoly.polyadd(B(H(p)), 2 * B(p))),
                 (H(C(p)), npoly.polysub(C(H(p)), 2 * C(p))),
                 (B(C(p)), npoly.polyadd(C(B(p)), H(p)))]
        for a, b in pairs:
            scale = max(1.0, float(np.max(np.abs(a))), float(np.max(np.abs(b))))
            res = max(res, _poly_diff(a, np.asarray(b)) / scale)
    return VerificationReport("diff-realization", {"series": series, "k": k, "degree": degree,
                                                   "check": "commutators"},
                              res, 0.0, res, tol, time.perf_counter() - t0)


def realized_casimir(series, k):
    """Omega = -(H^2 + 2H + 4CB)/4 as a composition of realized operators."""
    H = diff_realization(series, k, "H")
    B = diff_realization(series, k, "B")
    C = diff_realization(series, k, "C")

    def omega(p):
        p = _trim(p)
        hp = H(p)
        out = npoly.polyadd(H(hp), 2 * hp)
        out = npoly.polyadd(out, 4 * C(B(p)))
        return -0.25 * np.asarray(out)

    return omega


def _pad2(A, shape):
    out = np.zeros(shape)
    out[:A.shape[0], :A.shape[1]] = A
    return out


def _add2(*grids):
    shape = (max(g.shape[0] for g in grids), max(g.shape[1] for g in grids))
    return sum(_pad2(g, shape) for g in grids)


def _der2(P, d1, d2):
    P = np.asarray(P, dtype=float)
    if d1:
        P = npoly.polyder(P, d1, axis=0) if P.shape[0] > d1 else np.zeros((1, P.shape[1]))
    if d2:
        P = npoly.polyder(P, d2, axis=1) if P.shape[1] > d2 else np.zeros((P.shape[0], 1))
    return P


@dataclass(frozen=True)
class BivariatePolyOperator:
    """sum over (d1, d2) of coeff_{d1,d2}(x1, x2) d1^{d1} d2^{d2}.

    `terms` maps derivative orders to coefficient grids c[i, j] ~ x1^i x2^j.
    """

    terms: dict = field(default_factory=dict)

    def apply(self, P):
        P = np.atleast_2d(np.asarray(P, dtype=float))
        parts = [convolve2d(c, _der2(P, d1, d2)) for (d1, d2), c in self.terms.items()]
        return _add2(*parts)

    def __call__(self, P):
        return self.apply(P)


def _grid(entries):
    """Coefficient grid from {(i, j): value}."""
    n1 = max(i for i, _ in entries) + 1
    n2 = max(j for _, j in entries) + 1
    G = np.zeros((n1, n2))
    for (i, j), v in entries.items():
        G[i, j] += v
    return G


def delta_omega(k1, k2):
    """The tensor-product Casimir of pi+_k1 x pi-_k2 as a bivariate operator.

    -x1x2 (d1 + d2)^2 + (2x1x2 - 2k1x2 - 2k2x1)(d1 + d2)
    + (2k1x2 + 2k2x1 - 2k1k2 - x1x2 + k1(1-k1) + k2(1-k2)).
    """
    if not (k1 > 0 and k2 > 0):
        raise DomainError("k1 and k2 must be positive")
    second = _grid({(1, 1): -1.0})
    first = _grid({(1, 1): 2.0, (0, 1): -2 * k1, (1, 0): -2 * k2})
    zeroth = _grid({(0, 1): 2 * k1, (1, 0): 2 * k2, (1, 1): -1.0,
                    (0, 0): -2 * k1 * k2 + k1 * (1 - k1) + k2 * (1 - k2)})
    return BivariatePolyOperator({(2, 0): second, (1, 1): 2 * second, (0, 2): second,
                                  (1, 0): first, (0, 1): first, (0, 0): zeroth})


def delta_omega_composed(k1, k2):
    """1 x Omega + Omega x 1 - H x H / 2 - (C x B + B x C) from the realizations.

    Returns a callable acting on coefficient grids; the first tensor factor
    is pi+_k1 in x1, the second pi-_k2 in x2.
    """
    ops1 = {g: diff_realization("positive", k1, g) for g in "HBC"}
    ops2 = {g: diff_realization("negative", k2, g) for g in "HBC"}
    om1 = realized_casimir("positive", k1)
    om2 = realized_casimir("negative", k2)

    def on_axis(f, P, axis):
        P = np.asarray(P, dtype=float)
        if axis == 1:
            return on_axis(f, P.T, 0).T
        cols = [np.atleast_1d(f(P[:, j])) for j in range(P.shape[1])]
        n = max(len(c) for c in cols)
        return np.stack([np.pad(c, (0, n - len(c))) for c in cols], axis=1)

    def apply(P):
        P = np.atleast_2d(np.asarray(P, dtype=float))
        t1 = on_axis(om2, P, 1)
        t2 = on_axis(om1, P, 0)
        hh = ops1["H"].apply_axis(ops2["H"].apply_axis(P, 1), 0)
        cb = ops1["C"].apply_axis(ops2["B"].apply_axis(P, 1), 0)
        bc = ops1["B"].apply_axis(ops2["C"].apply_axis(P, 1), 0)
        return _add2(t1, t2, -0.5 * hh, -cb, -bc)

    return apply


# --------------------------------------------------- the intertwiner Xi


def _xi_image(rho, k1, k2, t):
    """x -> e^x phi(x; t), the image of Xi for t != 0."""
    if t > 0:
        return lambda x: math.exp(x) * jacobi_fn(2 * rho, (2 * k1 - 1, 2 * k2 - 1), x / t)
    return lambda x: math.exp(x) * jacobi_fn(2 * rho, (2 * k2 - 1, 2 * k1 - 1), -x / t)


def _xs(x, t):
    # (x1, x2) on the line through the sample point at fixed t
    return (x, x + t) if t > 0 else (x - t, x)


def xi_residual(rho, k1, k2, t, x, h=1e-3):
    """Eigen-residual of the Casimir on the image of Xi, by finite differences.

    The tensor-product Casimir only involves d = d1 + d2, the derivative
    along x at fixed t, so it acts on G(x) = e^x phi(x; t) as
    -x1x2 G'' + (2x1x2 - 2k1x2 - 2k2x1) G' + c(x1, x2) G. Derivatives are
    central differences at h and h/2 combined by Richardson extrapolation.
    Returns |Delta(Omega)G - (rho^2 + 1/4)G| divided by the sum of the
    magnitudes of the terms.
    """
    if t == 0:
        return euler_residual(rho, k1, k2, x)
    if not rho > 0:
        raise DomainError("rho must be positive")
    G = _xi_image(rho, k1, k2, t)
    x1, x2 = _xs(x, t)

    def derivs(step):
        gp, g0, gm = G(x + step), G(x), G(x - step)
        return (gp - gm) / (2 * step), (gp - 2 * g0 + gm) / step ** 2, g0

    d1a, d2a, g0 = derivs(h)
    d1b, d2b, _ = derivs(h / 2)
    d1 = (4 * d1b - d1a) / 3
    d2 = (4 * d2b - d2a) / 3
    c0 = 2 * k1 * x2 + 2 * k2 * x1 - 2 * k1 * k2 - x1 * x2 + k1 * (1 - k1) + k2 * (1 - k2)
    terms = [-x1 * x2 * d2, (2 * x1 * x2 - 2 * k1 * x2 - 2 * k2 * x1) * d1, c0 * g0,
             -(rho ** 2 + 0.25) * g0]
    return abs(sum(terms)) / sum(abs(v) for v in terms)


def euler_residual(rho, k1, k2, x, sign=1):
    """Residual of -x^2 y'' - 2K x y' + K(1-K) y = (rho^2+1/4) y, y = x^{1/2-K+-i rho}.

    Exact derivatives; the result is normalized by the term magnitudes.
    """
    K = k1 + k2
    mu = 0.5 - K + sign * 1j * rho
    y = x ** mu
    dy = mu * y / x
    d2y = mu * (mu - 1) * y / x ** 2
    terms = [-x * x * d2y, -2 * K * x * dy, K * (1 - K) * y, -(rho ** 2 + 0.25) * y]
    return abs(sum(terms)) / sum(abs(v) for v in terms)
