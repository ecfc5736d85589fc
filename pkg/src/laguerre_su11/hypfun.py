"""Confluent and Gauss hypergeometric kernels.

Only the parameter and argument ranges needed elsewhere in the package are
covered: 1F1 anywhere in the plane, U off the negative real axis, and 2F1
on the negative real axis.
"""
import cmath
import decimal
import math

from scipy import special

from .errors import BranchCutError, NonConvergenceError, PoleError
from .numkernel import lngamma

__all__ = ["hyp1f1", "hypU", "hyp2f1_neg"]

_MAX_TERMS = 10000
_REL = 1e-16
_NEAR_INT = 1e-6
_DELTA = 1e-5
_LOSS_LIMIT = 1e3
_BIG = 1e150


def _nonpos_int(x):
    x = complex(x)
    if x.imag == 0 and x.real <= 0 and x.real == math.floor(x.real):
        return int(-x.real)
    return None


def _near_int(x, tol=_NEAR_INT):
    x = complex(x)
    return abs(x - round(x.real)) < tol


# ---------------------------------------------------------------- 1F1


def _pfq_double(nums, dens, z):
    """Hypergeometric series in double precision. Returns (sum, max |term|)."""
    term = 1 + 0j
    s = 1 + 0j
    big = 1.0
    quiet = 0
    floor_n = max([abs(z)] + [-a.real for a in nums] + [0.0])
    for n in range(_MAX_TERMS):
        for a in nums:
            term *= a + n
        for b in dens:
            term /= b + n
        term *= z / (n + 1)
        s += term
        at = abs(term)
        if at > big:
            big = at
        if at <= _REL * abs(s):
            quiet += 1
            if quiet >= 3 and n > floor_n:
                return s, big
        else:
            quiet = 0
    raise NonConvergenceError("hypergeometric series did not converge", estimate=s)


def _pfq_wide(nums, dens, z, digits):
    """Same series summed in `digits`-digit decimal arithmetic.

    The inputs are exact binary floats, so the only rounding is in the
    summation itself; this recovers the digits lost to cancellation.
    """
    D = decimal.Decimal
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        nums_d = [(D(a.real), D(a.imag)) for a in nums]
        dens_d = [(D(b.real), D(b.imag)) for b in dens]
        zr, zi = D(z.real), D(z.imag)
        tr, ti = D(1), D(0)
        sr, si = D(1), D(0)
        eps = D(10) ** (-digits + 2)
        floor_n = max([abs(z)] + [-a.real for a in nums] + [0.0])
        quiet = 0
        for n in range(_MAX_TERMS):
            for ar, ai in nums_d:
                ar = ar + n
                tr, ti = tr * ar - ti * ai, tr * ai + ti * ar
            for br, bi in dens_d:
                br = br + n
                den = br * br + bi * bi
                tr, ti = (tr * br + ti * bi) / den, (ti * br - tr * bi) / den
            tr, ti = (tr * zr - ti * zi) / (n + 1), (tr * zi + ti * zr) / (n + 1)
            sr += tr
            si += ti
            if abs(tr) + abs(ti) <= eps * (abs(sr) + abs(si)):
                quiet += 1
                if quiet >= 3 and n > floor_n:
                    return complex(float(sr), float(si))
            else:
                quiet = 0
    raise NonConvergenceError("hypergeometric series did not converge")


def _pfq(nums, dens, z):
    """Convergent pFq series, re-summed with extra digits when it cancels."""
    s, big = _pfq_double(nums, dens, z)
    digits = 0
    while big > _LOSS_LIMIT * abs(s):
        loss = big / abs(s) if s != 0 else 1e300
        need = 24 + int(min(math.log10(loss), 300))
        if need <= digits:
            break
        digits = need
        s = _pfq_wide(nums, dens, z, digits)
    return s


def _m_poly(n, b, z):
    """1F1(-n; b; z) as a finite sum."""
    term = 1 + 0j
    s = 1 + 0j
    for j in range(n):
        term *= (-n + j) / ((b + j) * (j + 1)) * z
        s += term
    return s


def hyp1f1(a, b, z):
    """Kummer's function 1F1(a; b; z).

    Parameters
    ----------
    a, b, z : complex
        `b` must not be a nonpositive integer unless the series terminates
        earlier because `a` is a nonpositive integer of smaller modulus.

    Returns
    -------
    complex

    Notes
    -----
    For Re z < 0 Kummer's transformation e^z 1F1(b-a; b; -z) is summed
    instead. If the largest term exceeds the sum by more than 1e5 the
    series is summed again in decimal arithmetic carrying enough extra
    digits to absorb the cancellation.
    """
    a, b, z = complex(a), complex(b), complex(z)
    na = _nonpos_int(a)
    nb = _nonpos_int(b)
    if nb is not None and (na is None or na > nb):
        raise PoleError(f"1F1 lower parameter {b} is a nonpositive integer")
    if z == 0:
        return 1 + 0j
    if na is not None:
        return _m_poly(na, b, z)
    pref = 1.0
    if z.real < 0:
        pref = cmath.exp(z)
        a = b - a
        z = -z
        na = _nonpos_int(a)
        if na is not None:
            return pref * _m_poly(na, b, z)
    s = _pfq((a,), (b,), z)
    return pref * s


# ---------------------------------------------------------------- U


def _u_poly(n, b, z):
    """U(-n; b; z) = (-1)^n sum_j (-n)_j (b+j)_{n-j} z^j / j!."""
    s = 0j
    coef = 1 + 0j  # (-n)_j / j!
    for j in range(n + 1):
        tail = 1 + 0j
        for i in range(j, n):
            tail *= b + i
        s += coef * tail * z ** j
        coef *= (-n + j) / (j + 1)
    return (-1) ** n * s


def _lnrgamma(x):
    """log(1/Gamma(x)), or None where 1/Gamma vanishes."""
    if _nonpos_int(x) is not None:
        return None
    return -lngamma(x)


def _u_two_term(a, b, z, lnfac):
    """Two-term 1F1 definition of U with a cancellation estimate."""
    terms = []
    r1 = _lnrgamma(a - b + 1)
    if r1 is not None:
        terms.append(cmath.exp(lnfac + lngamma(1 - b) + r1) * hyp1f1(a, b, z))
    r2 = _lnrgamma(a)
    if r2 is not None:
        terms.append(cmath.exp(lnfac + lngamma(b - 1) + r2 + (1 - b) * cmath.log(z))
                     * hyp1f1(a - b + 1, 2 - b, z))
    val = sum(terms)
    size = sum(abs(t) for t in terms)
    loss = size / abs(val) if val != 0 else math.inf
    return val, loss


def _u_definition(a, b, z, lnfac):
    if _near_int(b):
        h = 1j * _DELTA * max(1.0, abs(b))
        v1, l1 = _u_two_term(a, b + h, z, lnfac)
        v2, l2 = _u_two_term(a, b - h, z, lnfac)
        return 0.5 * (v1 + v2), max(l1, l2)
    return _u_two_term(a, b, z, lnfac)


def _u_ratio(a, b, z):
    """U(a+1;b;z)/U(a;b;z) from the continued fraction of the a-recurrence."""
    tiny = 1e-300
    f = 2 * a + 2 - b + z
    if f == 0:
        f = tiny
    c = f
    d = 0j
    for j in range(1, 200000):
        aj = -(a + j) * (a + j - b + 1)
        bj = 2 * (a + j) + 2 - b + z
        d = bj + aj * d
        if d == 0:
            d = tiny
        c = bj + aj / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = c * d
        f *= delta
        if abs(delta - 1) < 1e-16:
            return 1 / f
    raise NonConvergenceError("continued fraction for U did not converge", estimate=1 / f)


def _u_minimal(a, b, z, lnfac):
    """exp(lnfac)*U(a;b;z) as the minimal solution of the a-recurrence.

    Uses the cross product M(a+1)U(a) - (a-b+1)M(a)U(a+1)
    = Gamma(b) e^z z^{1-b} / Gamma(a+1) to fix the normalization. Returns
    (value, cancellation factor of that cross product).
    """
    logz = cmath.log(z)
    if b.real < 1:
        return _u_minimal(a - b + 1, 2 - b, z, lnfac + (1 - b) * logz)
    m = math.ceil(1 - a.real) if a.real < 1 else 0
    a0 = a + m
    r = _u_ratio(a0, b, z)
    m1 = hyp1f1(a0 + 1, b, z)
    m0r = (a0 - b + 1) * hyp1f1(a0, b, z) * r
    den = m1 - m0r
    loss = (abs(m1) + abs(m0r)) / abs(den)
    lnscale = lnfac + lngamma(b) + z + (1 - b) * logz - lngamma(a0 + 1)
    u0 = 1 / den
    u1 = r * u0
    cur = a0
    for _ in range(m):
        u0, u1 = (2 * cur - b + z) * u0 - cur * (cur - b + 1) * u1, u0
        cur -= 1
        mag = abs(u0)
        if mag > _BIG or (0 < mag < 1 / _BIG):
            u0 /= mag
            u1 /= mag
            lnscale += math.log(mag)
    return u0 * cmath.exp(lnscale), loss


def _u_miller(a, b, z, lnfac):
    """exp(lnfac)*U(a;b;z) for Re a > 1 by downward recurrence to Re a in [0,1).

    The continued fraction supplies U(a+1)/U(a); the unnormalized sequence
    is carried down to a_s = a - m and matched to U(a_s) evaluated by the
    other routes. Returns (value, error proxy of U(a_s)).
    """
    m = math.floor(a.real)
    a_s = a - m
    r = _u_ratio(a, b, z)
    u0, u1 = 1 + 0j, r
    lnscale = 0.0
    cur = a
    for _ in range(m):
        u0, u1 = (2 * cur - b + z) * u0 - cur * (cur - b + 1) * u1, u0
        cur -= 1
        mag = abs(u0)
        if mag > _BIG or (0 < mag < 1 / _BIG):
            u0 /= mag
            u1 /= mag
            lnscale += math.log(mag)
    cands = []
    try:
        cands.append(_u_definition(a_s, b, z, 0.0))
        cands[-1] = (cands[-1][0], cands[-1][1] * 1e-16)
    except (NonConvergenceError, OverflowError):
        pass
    if abs(z) > 10:
        cands.append(_u_asymptotic(a_s, b, z, 0.0))
    us, err = min(cands, key=lambda c: c[1])
    # U(a) = U(a_s) * exp(lnfac) / (u0 * exp(lnscale))
    return cmath.exp(lnfac - lnscale + cmath.log(us) - cmath.log(u0)), err


def _u_asymptotic(a, b, z, lnfac):
    """Large-|z| expansion z^{-a} sum (a)_n (a-b+1)_n / n! (-z)^{-n}.

    Summed up to its smallest term; returns (value, relative size of that
    term).
    """
    term = 1 + 0j
    s = 1 + 0j
    best = math.inf
    for n in range(400):
        nxt = term * (a + n) * (a - b + 1 + n) / ((n + 1) * -z)
        if abs(nxt) >= abs(term) and n > 0:
            break
        term = nxt
        s += term
        best = abs(term) / abs(s)
        if best < 1e-17:
            break
    return cmath.exp(lnfac - a * cmath.log(z)) * s, best


def hypu_scaled(a, b, z, lnfac=0.0):
    """exp(lnfac) * U(a; b; z) without forming either factor separately.

    Useful when U is tiny and multiplied by a huge gamma factor (or the
    reverse). Same domain as `hypU`.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if z.imag == 0 and z.real <= 0:
        raise BranchCutError("U is cut along (-inf, 0]")
    na = _nonpos_int(a)
    if na is not None:
        return cmath.exp(lnfac) * _u_poly(na, b, z)
    nc = _nonpos_int(a - b + 1)
    if nc is not None:
        return cmath.exp(lnfac + (1 - b) * cmath.log(z)) * _u_poly(nc, 2 - b, z)
    # candidate routes, each with a relative error proxy; first good one wins
    best = (None, math.inf)
    if z.real < 0 or (abs(a) < 60 and abs(b) < 60):
        try:
            val, loss = _u_definition(a, b, z, lnfac)
        except (NonConvergenceError, OverflowError):
            val, loss = None, math.inf
        if loss < 1e3:
            return val
        best = (val, loss * 1e-16)
    if abs(z) > 10:
        val, err = _u_asymptotic(a, b, z, lnfac)
        if err < 1e-14:
            return val
        if err < best[1]:
            best = (val, err)
    try:
        val, loss = _u_minimal(a, b, z, lnfac)
        if loss * 1e-16 < best[1]:
            best = (val, loss * 1e-16)
    except (NonConvergenceError, OverflowError, ZeroDivisionError):
        pass
    if best[1] > 1e-13 and a.real > 1:
        try:
            val, err = _u_miller(a, b, z, lnfac)
            if err < best[1]:
                best = (val, err)
        except (NonConvergenceError, OverflowError, ZeroDivisionError, ValueError):
            pass
    if best[0] is None:
        raise NonConvergenceError(f"no stable route for U({a}; {b}; {z})")
    return best[0]


def hypU(a, b, z):
    """Tricomi's confluent hypergeometric function U(a; b; z).

    Principal branch, cut along (-inf, 0].

    Notes
    -----
    Three routes are tried, each with an estimate of its rounding loss:

    * the two-term combination of 1F1 functions, for moderate parameters.
      When `b` is within 1e-6 of an integer that combination has a
      removable singularity; it is then evaluated at b +/- i*delta
      (delta = 1e-5) and averaged, which cancels the first-order error;
    * the asymptotic expansion in 1/z, for |z| > 10;
    * U as the minimal solution of its three-term recurrence in `a`: the
      ratio U(a+1)/U(a) comes from a continued fraction and the recurrence
      is run downward, the stable direction. The scale is fixed either by
      the cross product with 1F1 or by matching at a parameter with real
      part in [0, 1) where one of the first two routes is accurate.
    """
    return hypu_scaled(a, b, z, 0.0)


# ---------------------------------------------------------------- 2F1


def _f21_series(a, b, c, z):
    return _pfq((a, b), (c,), z)


def _f21_poly(n, b, c, z):
    term = 1 + 0j
    s = 1 + 0j
    for j in range(n):
        term *= (-n + j) * (b + j) / ((c + j) * (j + 1)) * z
        s += term
    return s


def _gamma_ratio(num, den):
    """prod Gamma(num) / prod Gamma(den); zero if a denominator hits a pole."""
    if any(_nonpos_int(d) is not None for d in den):
        return 0j
    out = 0j
    for v in num:
        out += lngamma(v)
    for v in den:
        out -= lngamma(v)
    return cmath.exp(out)


def _f21_reciprocal(a, b, c, z):
    """Large negative z via the 1/z connection formula (a-b not an integer)."""
    w = 1 / z
    lz = math.log(-z)
    t1 = (_gamma_ratio([c, b - a], [b, c - a]) * cmath.exp(-a * lz)
          * _f21_series(a, a - c + 1, a - b + 1, w))
    t2 = (_gamma_ratio([c, a - b], [a, c - b]) * cmath.exp(-b * lz)
          * _f21_series(b, b - c + 1, b - a + 1, w))
    return t1 + t2


def hyp2f1_neg(a, b, c, z):
    """Gauss 2F1(a, b; c; z) for real z <= 0.

    Parameters
    ----------
    a, b, c : complex
    z : float
        Must satisfy z <= 0.

    Notes
    -----
    The power series is used for -1/2 <= z <= 0, Pfaff's transformation
    (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) for -3/2 <= z < -1/2, and the
    connection formula in 1/z beyond that. When a-b is within 1e-6 of an
    integer the 1/z formula is singular term by term, so b is offset by
    +/- delta, the two results averaged, and the average extrapolated in
    delta.
    """
    a, b, c = complex(a), complex(b), complex(c)
    z = float(z)
    if z > 0:
        raise ValueError("hyp2f1_neg requires z <= 0")
    na, nb, nc = _nonpos_int(a), _nonpos_int(b), _nonpos_int(c)
    term_n = min(n for n in (na, nb, math.inf) if n is not None)
    if nc is not None and not term_n <= nc:
        raise PoleError(f"2F1 lower parameter {c} is a nonpositive integer")
    if z == 0:
        return 1 + 0j
    if term_n is not math.inf:
        other = b if (na is not None and na == term_n) else a
        return _f21_poly(int(term_n), other, c, z)
    if z >= -0.5:
        return _f21_series(a, b, c, z)
    if z >= -1.5:
        return (1 - z) ** (-a) * _f21_series(a, c - b, c, z / (z - 1))
    if _near_int(a - b):
        h = _DELTA * max(1.0, abs(b))

        def avg(step):
            return 0.5 * (_f21_reciprocal(a, b + step, c, z) + _f21_reciprocal(a, b - step, c, z))

        # symmetric averages have an O(h^2) error; one Richardson step removes it
        return (4 * avg(h) - avg(2 * h)) / 3
    return _f21_reciprocal(a, b, c, z)
