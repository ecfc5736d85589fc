"""Registered verification suites and the sweep runner.

Each suite turns a parameter grid into a list of cases and each case into
one or more VerificationReport objects. Grids are either Cartesian
products of the per-parameter lists or, for suites whose parameters only
make sense together, zipped lists of equal length. Sampled suites draw
their points from a generator seeded by the sweep.
"""
import cmath
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import coupling, hypfun, jacobifn, laguerreop, numkernel, orthopoly, su11
from .errors import SpecError, UnknownSuiteError
from .report import VerificationReport

__all__ = ["SweepSpec", "Suite", "SUITES", "suite_names", "cases", "run_suite"]


@dataclass(frozen=True)
class SweepSpec:
    """Parameter grids, tolerance override, seed and worker count of a sweep.

    Attributes
    ----------
    grid : dict
        Parameter name -> nonempty list of values, overriding suite defaults.
    tol : float, optional
        Replaces every suite's default tolerance.
    seed : int
        Seed of the sampled suites.
    jobs : int
        Worker processes; 1 runs in-process.
    """

    grid: dict = field(default_factory=dict)
    tol: float = None
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        for k, v in self.grid.items():
            if not isinstance(v, (list, tuple)) or len(v) == 0:
                raise SpecError(f"grid for {k!r} must be a nonempty list")
        if self.tol is not None and not self.tol > 0:
            raise SpecError("tolerance must be positive")
        if int(self.jobs) < 1:
            raise SpecError("jobs must be at least 1")


@dataclass(frozen=True)
class Suite:
    """A named family of checks.

    `run(case, tol)` returns a list of reports; `sampler(rng, grid)`, when
    present, replaces the grid product by random draws.
    """

    name: str
    defaults: dict
    run: callable
    tol: float
    zipped: bool = False
    sampler: callable = None
    doc: str = ""


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _rep(suite, inputs, lhs, rhs, residual, tol, t0, **notes):
    return VerificationReport(suite, inputs, lhs, rhs, float(residual), tol,
                              time.perf_counter() - t0, notes=notes)


# ---------------------------------------------------------------- gamma


def _sample_gamma(rng, grid):
    out = []
    for _ in range(int(grid["n"][0])):
        out.append({"z": complex(round(rng.uniform(0.1, 6.0), 6), round(rng.uniform(-8.0, 8.0), 6))})
    return out


def _run_gamma(case, tol):
    z = case["z"]
    t0 = time.perf_counter()
    lhs = cmath.exp(numkernel.lngamma(z + 1) - numkernel.lngamma(z))
    r1 = _rep("gamma", {"z": z, "identity": "recurrence"}, lhs, z, _rel(lhs, z), tol, t0)
    t0 = time.perf_counter()
    y = z.imag
    lhs = numkernel.gamma_abs(complex(0.5, y)) ** 2
    rhs = math.pi / math.cosh(math.pi * y)
    r2 = _rep("gamma", {"y": y, "identity": "modulus"}, lhs, rhs, _rel(lhs, rhs), tol, t0)
    t0 = time.perf_counter()
    lhs = numkernel.lngamma(z.conjugate())
    rhs = numkernel.lngamma(z).conjugate()
    r3 = _rep("gamma", {"z": z, "identity": "conjugation"}, lhs, rhs, abs(lhs - rhs), tol, t0)
    return [r1, r2, r3]


# --------------------------------------------------------------- hypfun


def _sample_hypfun(rng, grid):
    out = []
    for _ in range(int(grid["n"][0])):
        out.append({"a": complex(round(rng.uniform(-3, 3), 6), round(rng.uniform(-2, 2), 6)),
                    "b": complex(round(rng.uniform(0.2, 3), 6), round(rng.uniform(-2, 2), 6)),
                    "c": round(rng.uniform(0.5, 3), 6),
                    "z": round(rng.uniform(0.2, 8), 6),
                    "w": round(rng.uniform(-0.75, -0.25), 6)})
    return out


def _run_hypfun(case, tol):
    a, b, c, z, w = case["a"], case["b"], case["c"], case["z"], case["w"]
    reps = []
    t0 = time.perf_counter()
    lhs = hypfun.hyp1f1(a, b, z)
    rhs = cmath.exp(z) * hypfun.hyp1f1(b - a, b, -z)
    reps.append(_rep("hypfun", {"a": a, "b": b, "z": z, "identity": "kummer"},
                     lhs, rhs, _rel(lhs, rhs), tol, t0))
    t0 = time.perf_counter()
    lhs = hypfun.hypU(a, b, z)
    rhs = z ** (1 - b) * hypfun.hypU(a - b + 1, 2 - b, z)
    reps.append(_rep("hypfun", {"a": a, "b": b, "z": z, "identity": "U-reflection"},
                     lhs, rhs, _rel(lhs, rhs), max(tol, 1e-9), t0))
    t0 = time.perf_counter()
    lhs = hypfun.hyp2f1_neg(a, b, c, w)
    rhs = hypfun._f21_series(complex(a), complex(b), complex(c), w)
    reps.append(_rep("hypfun", {"a": a, "b": b, "c": c, "z": w, "identity": "pfaff-vs-series"},
                     lhs, rhs, _rel(lhs, rhs), tol, t0))
    return reps


# ------------------------------------------------------- orthogonality


def _run_laguerre_ortho(case, tol):
    al, nmax, nodes = case["alpha"], int(case["nmax"]), int(case["nodes"])
    t0 = time.perf_counter()
    rule = numkernel.gauss_laguerre(nodes, al)
    L = np.array([orthopoly.laguerre_orthonormal(n, al, rule.nodes) for n in range(nmax + 1)])
    G = (L * rule.weights) @ L.T / math.gamma(al + 1)
    res = float(np.max(np.abs(G - np.eye(nmax + 1))))
    return [_rep("laguerre-ortho", dict(case), res, 0.0, res, tol, t0)]


def _run_cdh_ortho(case, tol):
    a, b, c, nmax = case["a"], case["b"], case["c"], int(case["nmax"])
    t0 = time.perf_counter()
    meas = orthopoly.cdh_measure((a, b, c))

    def block(y):
        return np.array([orthopoly.cdh_orthonormal(n, y, (a, b, c)) for n in range(nmax + 1)])

    G = np.empty((nmax + 1, nmax + 1))
    for n in range(nmax + 1):
        for m in range(n, nmax + 1):
            G[n, m] = G[m, n] = meas.integrate(lambda y: block(y)[n] * block(y)[m])
    res = float(np.max(np.abs(G - np.eye(nmax + 1))))
    gram = _rep("cdh-ortho", {**case, "check": "gram"}, res, 0.0, res, tol, t0,
                masses=len(meas.masses))
    t0 = time.perf_counter()
    mass = meas.total_mass()
    tot = _rep("cdh-ortho", {"a": a, "b": b, "c": c, "check": "total-mass"}, mass, 1.0,
               abs(mass - 1), tol, t0)
    return [gram, tot]


# ------------------------------------------------------------- operator


def _sample_points(rng, n):
    out = []
    for _ in range(n):
        rho = round(rng.uniform(0.2, 2.0), 6)
        eps = round(rng.uniform(0.0, 0.95), 6)
        zi = round(rng.uniform(0.3, 4.0), 6) * (1 if rng.random() < 0.5 else -1)
        z = complex(round(rng.uniform(-5.0, 5.0), 6), zi)
        out.append({"rho": rho, "eps": eps, "z": z})
    return out


def _sample_operator(rng, grid):
    return _sample_points(rng, int(grid["n"][0]))


def _run_operator_eig(case, tol):
    p = laguerreop.PrincipalParams(case["rho"], case["eps"])
    kmax = int(case.get("kmax", 15))
    reps = []
    for fam in "stuv":
        t0 = time.perf_counter()
        f = laguerreop.SolutionFamily(fam, p, case["z"])
        res = max(f.residual(k) for k in range(-kmax, kmax + 1))
        reps.append(_rep("operator-eig", {**case, "family": fam, "kmax": kmax}, res, 0.0, res,
                         tol, t0))
    return reps


def _run_connection(case, tol):
    p = laguerreop.PrincipalParams(case["rho"], case["eps"])
    z = case["z"]
    t0 = time.perf_counter()
    cc = laguerreop.connection(p, z)
    fam = {f: laguerreop.SolutionFamily(f, p, z) for f in "stuv"}
    ks = range(-5, 6)
    vals = {f: np.array([fam[f](k) for k in ks]) for f in "stuv"}
    M1, M2 = cc.matrix(1), cc.matrix(2)

    def resid(target, M_row, basis):
        comb = M_row[0] * vals[basis[0]] + M_row[1] * vals[basis[1]]
        return float(np.max(np.abs(vals[target] - comb)) / np.max(np.abs(vals[target])))

    r1 = max(resid("u", M1[0], "st"), resid("v", M1[1], "st"))
    r2 = max(resid("s", M2[0], "uv"), resid("t", M2[1], "uv"))
    ri = float(np.max(np.abs(M1 @ M2 - np.eye(2))))
    reps = [_rep("connection", {**case, "system": "ABCD"}, r1, 0.0, r1, tol, t0),
            _rep("connection", {**case, "system": "EFGH"}, r2, 0.0, r2, tol, t0),
            _rep("connection", {**case, "system": "inverse"}, ri, 0.0, ri, tol, t0)]
    return reps


def _run_wronskian(case, tol):
    p = laguerreop.PrincipalParams(case["rho"], case["eps"])
    z = complex(case["z"])
    reps = []
    t0 = time.perf_counter()
    u = laguerreop.SolutionFamily("u", p, z)
    v = laguerreop.SolutionFamily("v", p, z)
    w = [laguerreop.wronskian(u, v, k) for k in range(-10, 11)]
    res = max(abs(x - w[10]) for x in w) / abs(w[10])
    reps.append(_rep("wronskian", {**case, "check": "k-independence"}, w[0], w[10], res,
                     min(tol, 1e-10), t0))
    t0 = time.perf_counter()
    num = laguerreop.wronskian_phi_Phi_numeric(p, z)
    closed = laguerreop.wronskian_phi_Phi(p, z)
    reps.append(_rep("wronskian", {**case, "check": "closed-form"}, num, closed,
                     _rel(num, closed), tol, t0))
    if case["eps"] == 0:
        t0 = time.perf_counter()
        s = laguerreop.SolutionFamily("s", p, 0.0)
        t = laguerreop.SolutionFamily("t", p, 0.0)
        val = laguerreop.wronskian(s, t, 0)
        reps.append(_rep("wronskian", {"rho": case["rho"], "eps": 0.0, "check": "[s,t](0)"},
                         val, 2j * case["rho"], abs(val - 2j * case["rho"]), min(tol, 1e-10), t0))
    return reps


def _run_laguerre_fn_ortho(case, tol):
    p = laguerreop.PrincipalParams(case["rho"], case["eps"])
    nmax = int(case["nmax"])
    t0 = time.perf_counter()
    G = laguerreop.laguerre_gram(p, nmax, tol=1e-10)
    res = float(np.max(np.abs(G - np.eye(2 * nmax + 1))))
    return [_rep("laguerre-fn-ortho", dict(case), res, 0.0, res, tol, t0)]


def _run_spectral(case, tol):
    p = laguerreop.PrincipalParams(case["rho"], case["eps"])
    nmax = int(case["nmax"])
    rng = np.random.default_rng(int(case["seed"]))
    f = {k: complex(*rng.normal(size=2)) for k in range(-nmax, nmax + 1)}
    g = {k: complex(*rng.normal(size=2)) for k in range(-nmax, nmax + 1)}
    reps = []
    t0 = time.perf_counter()
    lhs = laguerreop.spectral_projection(p, [(-np.inf, np.inf)], f, g, tol=1e-10)
    rhs = sum(f[k] * np.conj(g[k]) for k in f)
    reps.append(_rep("spectral", {"rho": case["rho"], "eps": case["eps"], "nmax": nmax,
                                  "check": "E(R)"}, lhs, rhs, abs(lhs - rhs), tol, t0))
    N = int(case["N"])
    for z in case["z"]:
        t0 = time.perf_counter()
        fe, ge = {0: 1.0, 1: 0.5}, {0: 1.0, -1: 0.25j}
        a = laguerreop.resolvent_element(p, z, fe, ge)
        b = laguerreop.finite_section_resolvent(p, z, fe, ge, N=N)
        reps.append(_rep("spectral", {"rho": case["rho"], "eps": case["eps"], "z": z, "N": N,
                                      "check": "resolvent"}, a, b, abs(a - b), tol, t0))
    return reps


# ------------------------------------------------------------- Jacobi


def _bump_test_function(x):
    # exp(-2 t^2) times a smooth cutoff on t in [3.5, 4.5], t = asinh(sqrt(x))
    t = math.asinh(math.sqrt(x))

    def h(s):
        return math.exp(-1 / s) if s > 0 else 0.0

    return math.exp(-2 * t * t) * h(4.5 - t) / (h(4.5 - t) + h(t - 3.5))


JACOBI_SUPPORT = math.sinh(4.5) ** 2


def _run_jacobi(case, tol):
    ab = (case["alpha"], case["beta"])
    t0 = time.perf_counter()
    F = jacobifn.sample_transform(_bump_test_function, ab, support=JACOBI_SUPPORT)
    errs = []
    for x in (0.2, 1.0, 3.0, 10.0):
        v = jacobifn.jacobi_inverse(F, ab, x, tol=1e-6)
        fx = _bump_test_function(x)
        errs.append(abs(v - fx) / abs(fx))
    res = max(errs)
    r1 = _rep("jacobi-transform", {**case, "check": "round-trip"}, res, 0.0, res, tol, t0,
              lam_max=F.grid.lam_max, discrete=len(F.discrete))
    t0 = time.perf_counter()
    lhs, rhs = jacobifn.parseval_sides(_bump_test_function, F, ab, support=JACOBI_SUPPORT)
    r2 = _rep("jacobi-transform", {**case, "check": "parseval"}, lhs, rhs, _rel(lhs, rhs), tol, t0)
    return [r1, r2]


# ----------------------------------------------------- representations


def _label(series):
    return {"positive": su11.RepLabel.positive(0.7),
            "negative": su11.RepLabel.negative(0.7),
            "principal": su11.RepLabel.principal(0.8, 0.3),
            "complementary": su11.RepLabel.complementary(-0.3, 0.25)}[series]


def _run_rep(case, tol):
    lab = _label(case["series"])
    N = int(case["N"])
    reps = [su11.commutator_check(lab, N, tol), su11.star_check(lab, N, tol),
            su11.casimir_check(lab, N, tol), su11.hx_identity_check(lab, N, tol)]
    if lab.series in ("positive", "negative"):
        reps.append(su11.x_intertwine_check(lab, N, tol))
    if lab.series == "positive":
        reps.append(su11.theta_check(lab.k, N, 10, tol))
    return reps


def _run_realization(case, tol):
    k = case["k"]
    return [su11.realization_eigen_check(k, int(case["nmax"]), tol),
            su11.realization_commutator_check("positive", k, int(case["nmax"]), tol),
            su11.realization_commutator_check("negative", k, int(case["nmax"]), tol)]


def _run_delta_omega(case, tol):
    k1, k2, deg = case["k1"], case["k2"], int(case["degree"])
    t0 = time.perf_counter()
    disp = su11.delta_omega(k1, k2)
    comp = su11.delta_omega_composed(k1, k2)
    res = 0.0
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            P = np.zeros((i + 1, j + 1))
            P[i, j] = 1.0
            a, b = disp(P), comp(P)
            n1, n2 = max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1])
            a = np.pad(a, ((0, n1 - a.shape[0]), (0, n2 - a.shape[1])))
            b = np.pad(b, ((0, n1 - b.shape[0]), (0, n2 - b.shape[1])))
            res = max(res, float(np.max(np.abs(a - b))))
    return [_rep("delta-omega", dict(case), res, 0.0, res, tol, t0)]


def _sample_xi(rng, grid):
    out = []
    for _ in range(int(grid["n"][0])):
        k1 = round(rng.uniform(0.5, 1.0), 6)
        k2 = round(rng.uniform(max(0.5, k1 - 0.5), min(1.0, k1 + 0.5)), 6)
        t = round(rng.uniform(0.5, 2.0), 6) * (1 if rng.random() < 0.5 else -1)
        out.append({"rho": round(rng.uniform(0.3, 2.0), 6), "k1": k1, "k2": k2, "t": t,
                    "x": round(rng.uniform(0.3, 2.0), 6)})
    return out


def _run_xi(case, tol):
    t0 = time.perf_counter()
    r = su11.xi_residual(case["rho"], case["k1"], case["k2"], case["t"], case["x"])
    reps = [_rep("xi", dict(case), r, 0.0, r, tol, t0)]
    for sign in (1, -1):
        t0 = time.perf_counter()
        e = su11.euler_residual(case["rho"], case["k1"], case["k2"], case["x"], sign)
        reps.append(_rep("xi", {"rho": case["rho"], "k1": case["k1"], "k2": case["k2"],
                                "t": 0.0, "x": case["x"], "sign": sign}, e, 0.0, e,
                         min(tol, 1e-8), t0))
    return reps


# ------------------------------------------------------------ coupling


def _run_cg_normalization(case, tol):
    return [coupling.verify_cg_normalization((case["k1"], case["k2"]), case["x1"], case["x2"], tol)]


def _run_cg_recurrence(case, tol):
    return [coupling.cg_recurrence_check((case["k1"], case["k2"]), case["rho"],
                                         int(case["n1"]), int(case["n2"]), tol)]


def _run_product(case, tol):
    return [coupling.verify_product_formula(int(case["n1"]), int(case["n2"]), case["k1"],
                                            case["k2"], case["x1"], case["x2"], tol)]


def _run_asymptotics(case, tol):
    p = laguerreop.PrincipalParams(case["rho"], case["eps"])
    return [laguerreop.asymptotic_check(case["family"], p, case["z"], int(case["k"]), tol)]


# ------------------------------------------------------------ registry


_PRODUCT_GRID = {
    "n1": [0, 1, 2, 3, 1, 0, 2, 0, 3, 1, 2, 3],
    "n2": [0, 0, 1, 1, 2, 3, 1, 1, 1, 3, 2, 0],
    "k1": [1.0, 1.0, 0.6, 0.6, 0.6, 0.7, 1.0, 0.6, 1.0, 0.7, 0.7, 0.6],
    "k2": [1.0, 1.0, 0.7, 0.7, 0.7, 0.6, 0.7, 0.7, 0.6, 0.6, 0.7, 1.0],
    "x1": [2.0, 2.0, 2.0, 0.3, 0.5, 0.4, 0.7, 1.0, 0.8, 2.0, 1.3, 1.5],
    "x2": [1.0, 0.5, 0.5, 1.1, 2.0, 2.5, 1.9, 1.0, 0.8, 2.0, 1.3, 0.2],
}

SUITES = {s.name: s for s in [
    Suite("gamma", {"n": [8]}, _run_gamma, 1e-12, sampler=_sample_gamma,
          doc="log-gamma recurrence, conjugation and |Gamma(1/2+iy)|"),
    Suite("hypfun", {"n": [8]}, _run_hypfun, 1e-10, sampler=_sample_hypfun,
          doc="Kummer transformation, U reflection, 2F1 Pfaff against series"),
    Suite("laguerre-ortho", {"alpha": [0.3, 1.0, 2.5], "nmax": [20], "nodes": [64]},
          _run_laguerre_ortho, 1e-10, doc="Gram matrix of l_n by Gauss-Laguerre"),
    Suite("cdh-ortho", {"a": [-0.3, 0.5], "b": [0.8], "c": [1.1], "nmax": [10]},
          _run_cdh_ortho, 1e-8, doc="continuous dual Hahn Gram matrix and total mass"),
    Suite("operator-eig", {"n": [6], "kmax": [15]}, _run_operator_eig, 1e-8,
          sampler=lambda rng, g: [{**c, "kmax": g["kmax"][0]} for c in _sample_operator(rng, g)],
          doc="recurrence residuals of s, t, u, v"),
    Suite("connection", {"n": [6]}, _run_connection, 1e-8, sampler=_sample_operator,
          doc="both connection systems and their mutual inverse"),
    Suite("wronskian", {"rho": [0.5, 1.3], "eps": [0.0, 0.3, 0.75], "z": [1 + 1j, -2 + 0.5j]},
          _run_wronskian, 1e-8, doc="k-independence, closed form, [s,t](0) = 2 i rho"),
    Suite("laguerre-fn-ortho", {"rho": [1.0, 0.6], "eps": [0.25, 0.8], "nmax": [5, 5]},
          _run_laguerre_fn_ortho, 1e-6, zipped=True, doc="Gram matrix of psi_n, |n| <= nmax"),
    Suite("spectral", {"rho": [1.0, 0.6], "eps": [0.25, 0.8], "nmax": [5, 5], "seed": [1, 2],
                       "N": [400, 400],
                       "z": [[1 + 1j, -2 + 1.5j, 0.5 - 1j, -1 - 2j]] * 2},
          _run_spectral, 1e-6, zipped=True,
          doc="E(R) = identity on a window, resolvent against a finite section"),
    Suite("jacobi-transform", {"alpha": [1.0, 0.0], "beta": [0.0, 2.5]}, _run_jacobi, 1e-5,
          doc="inverse transform round trip and Parseval"),
    Suite("rep-commutators", {"series": ["positive", "negative", "principal", "complementary"],
                              "N": [20]},
          _run_rep, 1e-12, doc="commutators, star, Casimir, H/X identities, theta, Laguerre X"),
    Suite("diff-realization", {"k": [0.6, 1.0, 1.7], "nmax": [10]}, _run_realization, 1e-12,
          doc="realized H on l_n and realized commutators"),
    Suite("delta-omega", {"k1": [0.6, 1.0, 0.8], "k2": [0.7, 0.7, 1.3], "degree": [6, 6, 6]},
          _run_delta_omega, 1e-12, zipped=True, doc="composed against closed-form tensor Casimir"),
    Suite("xi", {"n": [4]}, _run_xi, 1e-6, sampler=_sample_xi,
          doc="Casimir eigen-residual on the image of Xi, Euler branch"),
    Suite("cg-normalization", {"k1": [0.6, 1.0, 0.8], "k2": [0.7, 0.7, 0.8],
                               "x1": [0.4, 2.0, 1.0], "x2": [1.6, 0.5, 1.0]},
          _run_cg_normalization, 1e-4, zipped=True,
          doc="normalization integral of the Clebsch-Gordan coefficients"),
    Suite("cg-recurrence", {"k1": [0.6], "k2": [0.7], "rho": [0.3, 1.0, 2.5], "n1": [0, 3],
                            "n2": [0, 2]},
          _run_cg_recurrence, 1e-10, doc="Casimir eigen-equation of the decomposition coefficients"),
    Suite("product-formula", _PRODUCT_GRID, _run_product, 1e-4, zipped=True,
          doc="Laguerre product formula in all three regimes"),
    Suite("asymptotics", {"family": ["u", "v", "s", "t"], "rho": [0.7], "eps": [0.3],
                          "z": [1 + 1j], "k": [400]},
          _run_asymptotics, 0.1, doc="large-|k| leading terms (diagnostic)"),
]}


def suite_names():
    return list(SUITES)


def _suite(name):
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; registered: {', '.join(SUITES)}")
    return SUITES[name]


def cases(name, spec=None):
    """The list of cases of one suite under `spec`."""
    spec = spec or SweepSpec()
    s = _suite(name)
    unknown = set(spec.grid) - set(s.defaults)
    if unknown:
        raise SpecError(f"suite {name!r} has no parameter(s) {sorted(unknown)}; "
                        f"known: {sorted(s.defaults)}")
    grid = {**s.defaults, **{k: list(v) for k, v in spec.grid.items()}}
    if s.sampler is not None:
        rng = np.random.default_rng(spec.seed)
        return s.sampler(rng, grid)
    keys = list(grid)
    if s.zipped:
        lengths = {len(v) for v in grid.values()}
        if len(lengths) != 1:
            raise SpecError(f"suite {name!r} zips its parameters; all grids need equal length")
        return [dict(zip(keys, vals)) for vals in zip(*grid.values())]
    return [dict(zip(keys, vals)) for vals in itertools.product(*grid.values())]


def _run_case(name, case, tol):
    return SUITES[name].run(case, tol)


def run_suite(name, spec=None):
    """Run a suite (or "all") and return its reports in case order.

    For "all", grid keys apply to the suites that have them; a key no
    suite knows is an error.
    """
    spec = spec or SweepSpec()
    if name == "all":
        known = set().union(*(s.defaults for s in SUITES.values()))
        unknown = set(spec.grid) - known
        if unknown:
            raise SpecError(f"no suite has parameter(s) {sorted(unknown)}")
        out = []
        for n, s in SUITES.items():
            sub = SweepSpec({k: v for k, v in spec.grid.items() if k in s.defaults},
                            spec.tol, spec.seed, spec.jobs)
            out.extend(run_suite(n, sub))
        return out
    s = _suite(name)
    tol = spec.tol if spec.tol is not None else s.tol
    todo = cases(name, spec)
    if spec.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            chunks = list(pool.map(_run_case, [name] * len(todo), todo, [tol] * len(todo)))
    else:
        chunks = [_run_case(name, c, tol) for c in todo]
    return [r for chunk in chunks for r in chunk]
