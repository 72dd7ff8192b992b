"""Complex special functions required by the closed-form oscillator solutions.

Log-gamma (Lanczos), the confluent hypergeometric Phi(a;c;z), the Gauss
hypergeometric on the negative real axis with analytic continuation, Bessel
and Hankel functions of orders 0 and 1, and Legendre P_nu/Q_nu of real degree
on [0, 1).

The hypergeometric and Legendre series are summed in mpmath arithmetic with
working precision scaled to the argument, because the partial sums can exceed
the result by many orders of magnitude (pure double precision would lose the
answer to cancellation well inside the parameter ranges this package visits).
Inputs and outputs are ordinary complex/float; there is no user-facing
arbitrary-precision mode.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import mpmath
from scipy.special import j0 as _sp_j0, j1 as _sp_j1, y0 as _sp_y0, y1 as _sp_y1

from .errors import (
    ConvergenceError,
    DomainError,
    LogarithmicSingularityError,
    PoleError,
)

_MAX_TERMS = 20000
_STOP_REL = 1e-17
_SERIES_CUTOFF = 150.0  # |z| beyond which the Kummer asymptotic branch serves


@dataclass(frozen=True)
class SeriesResult:
    """Value of a summed series plus convergence metadata."""

    value: complex
    terms_used: int
    truncation_estimate: float


# ---------------------------------------------------------------------------
# log-gamma
# ---------------------------------------------------------------------------

# Lanczos coefficients, g = 607/128, 15 terms (Godfrey); ~15 significant digits
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def ln_gamma(z) -> complex:
    """Principal-branch log-gamma for complex z (Lanczos with reflection)."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real):
        raise PoleError(f"log-gamma pole at nonpositive integer {z.real:g}")
    if z.real < 0.5:
        # reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - ln_gamma(1.0 - z)
    zz = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (zz + k)
    t = zz + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma(z) -> complex:
    """exp(ln_gamma(z))."""
    return cmath.exp(ln_gamma(z))


# ---------------------------------------------------------------------------
# mpmath-backed series helpers
# ---------------------------------------------------------------------------

def _is_nonpositive_integer(z) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real)


def _sum_hyp_series(ratio_fn, dps, max_terms, min_terms=0):
    """Sum 1 + sum_n prod(ratio) with ratio_fn(n) = term_{n+1}/term_n.

    Returns (value mpc, terms, |last|+|prev| float, max |term| float).
    Stops when two consecutive terms are below _STOP_REL * |partial sum|.
    """
    with mpmath.workdps(dps):
        s = mpmath.mpc(1.0)
        term = mpmath.mpc(1.0)
        small_run = 0
        max_term = 1.0
        prev_small = 0.0
        for n in range(max_terms):
            term = term * ratio_fn(n)
            s += term
            at = abs(term)
            if float(at) > max_term:
                max_term = float(at)
            if n >= min_terms and at < _STOP_REL * abs(s):
                small_run += 1
                if small_run == 1:
                    prev_small = float(at)
                if small_run >= 2:
                    return s, n + 1, prev_small + float(at), max_term
            else:
                small_run = 0
        raise ConvergenceError(
            f"hypergeometric series did not converge within {max_terms} terms")


def _kummer_series(a, c, z, max_terms):
    az = abs(z)
    dps = 25 + int(0.5 * az)
    a_m, c_m, z_m = mpmath.mpc(a), mpmath.mpc(c), mpmath.mpc(z)
    ratio = lambda n: (a_m + n) * z_m / ((c_m + n) * (n + 1))
    min_terms = int(az) + 4
    for attempt in range(3):
        s, terms, trunc, max_term = _sum_hyp_series(ratio, dps, max_terms, min_terms)
        value = complex(s)
        # roundoff guard: the cancelled partial sums must not contaminate
        if max_term * mpmath.mpf(10) ** (2 - dps) < 1e-16 * max(abs(value), 1e-300):
            return SeriesResult(value, terms, trunc)
        dps *= 2
    return SeriesResult(value, terms, trunc)


def _asymp2f0(p, q, w):
    """sum_k (p)_k (q)_k / (k! w^k), truncated at the smallest term."""
    total = complex(1.0)
    term = complex(1.0)
    smallest = math.inf
    n = 0
    for k in range(400):
        term = term * (p + k) * (q + k) / ((k + 1) * w)
        at = abs(term)
        if at > smallest:
            break
        total += term
        smallest = at
        n = k + 1
        if at < 1e-20 * abs(total):
            break
    return total, smallest if n else 0.0, n


def _kummer_asymptotic(a, c, z):
    """Full large-|z| expansion for pure-imaginary z = i y, optimally truncated."""
    y = z.imag
    if abs(z.real) > 1e-12 * abs(y):
        raise DomainError("Kummer asymptotic branch implemented for imaginary z only")
    if y < 0.0:
        res = _kummer_asymptotic(complex(a).conjugate(), complex(c).conjugate(),
                                 complex(0.0, -y))
        return SeriesResult(res.value.conjugate(), res.terms_used, res.truncation_estimate)
    if abs(c) > abs(y) / 4.0:
        raise DomainError(
            f"asymptotic regime violated: |c| = {abs(c):.3g} > |z|/4 = {abs(y) / 4.0:.3g}")

    a = complex(a)
    c = complex(c)
    w = complex(0.0, y)
    # recessive component: Gamma(c)/Gamma(c-a) e^{i pi a} z^{-a} 2F0(a, a-c+1; -1/w)
    s1, e1, n1 = _asymp2f0(a, a - c + 1.0, -w)
    t1 = cmath.exp(ln_gamma(c) - ln_gamma(c - a)
                   - a * complex(math.log(y), -0.5 * math.pi)) * s1
    # dominant component: Gamma(c)/Gamma(a) e^w w^{a-c} 2F0(c-a, 1-a; 1/w)
    s2, e2, n2 = _asymp2f0(c - a, 1.0 - a, w)
    t2 = cmath.exp(ln_gamma(c) - ln_gamma(a) + w + (a - c) * cmath.log(w)) * s2
    return SeriesResult(t1 + t2, n1 + n2, e1 + e2)


def kummer_phi(a, c, z, max_terms: int = _MAX_TERMS) -> SeriesResult:
    """Confluent hypergeometric Phi(a; c; z) = 1F1(a; c; z).

    Power series below |z| = 150, full asymptotic expansion (pure imaginary z,
    |c| <= |z|/4) above.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"Phi(a;c;z) pole: c = {c} is a nonpositive integer")
    z = complex(z)
    if z == 0.0:
        return SeriesResult(complex(1.0), 0, 0.0)
    if abs(z) <= _SERIES_CUTOFF:
        return _kummer_series(a, c, z, max_terms)
    return _kummer_asymptotic(complex(a), complex(c), z)


def kummer_phi_deriv(a, c, z) -> SeriesResult:
    """d/dz Phi(a;c;z) = (a/c) Phi(a+1; c+1; z)."""
    inner = kummer_phi(complex(a) + 1.0, complex(c) + 1.0, z)
    scale = complex(a) / complex(c)
    return SeriesResult(scale * inner.value, inner.terms_used,
                        abs(scale) * inner.truncation_estimate)


# ---------------------------------------------------------------------------
# Gauss hypergeometric on the negative real axis
# ---------------------------------------------------------------------------

def _f_series_mp(a, b, c, x, dps):
    """2F1 series at fixed dps; |x| < 1 required.

    Stops once two consecutive terms fall below 10^-(dps+2) of the partial
    sum (never looser than the package-wide 1e-17 rule).
    """
    stop = mpmath.mpf(10) ** -(dps + 2)
    with mpmath.workdps(dps):
        a_m, b_m, c_m, x_m = mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(c), mpmath.mpc(x)
        s = mpmath.mpc(1.0)
        term = mpmath.mpc(1.0)
        small_run = 0
        max_term = mpmath.mpf(1.0)
        for n in range(_MAX_TERMS):
            term = term * (a_m + n) * (b_m + n) * x_m / ((c_m + n) * (n + 1))
            s += term
            at = abs(term)
            if at > max_term:
                max_term = at
            if at < stop * abs(s):
                small_run += 1
                if small_run >= 2:
                    return s, max_term
            else:
                small_run = 0
        raise ConvergenceError(
            f"2F1 series did not converge within {_MAX_TERMS} terms (x = {x})")


def _f_regular_mp(a, b, c, x, dps_target):
    """2F1 for real x < 1 accurate to ~dps_target digits; mpc out.

    Direct series or the Pfaff map x -> x/(x-1); the working precision is
    escalated past whatever the oscillating partial sums cancel away.
    """
    x = float(x)
    dps = dps_target + 5
    for attempt in range(5):
        with mpmath.workdps(dps):
            if abs(x) <= 0.65:
                s, max_term = _f_series_mp(a, b, c, x, dps)
            else:
                # Pfaff keeps the argument in (0, 1) for every x < 0
                y = x / (x - 1.0)
                s, max_term = _f_series_mp(a, mpmath.mpc(c) - mpmath.mpc(b), c, y, dps)
                s = mpmath.exp(-mpmath.mpc(a) * mpmath.log(1.0 - x)) * s
            lost = max(0.0, float(mpmath.log10(max_term / (abs(s) + mpmath.mpf(1e-300)))))
            if lost + dps_target + 3 <= dps:
                return s
        dps = dps_target + int(lost) + 8
    return s


def _f_regular(a, b, c, x):
    return complex(_f_regular_mp(a, b, c, x, 30))


def _f_continuation(a, b, c, x, degenerate_nudge=1e-9):
    """Analytic continuation to x < -1 via the 1/x connection formula.

    Near the degenerate slice a - b in Z the two connection terms cancel to
    O(1/nudge), so every piece of parameter arithmetic (not only the series)
    must run in the escalated mpmath precision: a double-rounded "1 - b + a"
    already costs 1e-16/nudge of the answer.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    diff = a - b
    dps = 30
    degenerate = (abs(diff.imag) < 1e-12
                  and abs(diff.real - round(diff.real)) < 1e-12)
    if degenerate:
        warnings.warn(
            f"degenerate hypergeometric continuation (a - b = {diff:.3g} is an "
            f"integer); nudging b by {degenerate_nudge:g}", stacklevel=3)
        # the connection terms cancel to O(1/nudge): buy those digits back
        dps += 10 + int(-math.log10(degenerate_nudge))
    zeta = -float(x)
    with mpmath.workdps(dps):
        am, cm = mpmath.mpc(a), mpmath.mpc(c)
        bm = mpmath.mpc(b) + degenerate_nudge if degenerate else mpmath.mpc(b)
        one = mpmath.mpf(1.0)
        inv = -one / zeta
        f1 = _f_regular_mp(am, one - cm + am, one - bm + am, inv, dps)
        f2 = _f_regular_mp(bm, one - cm + bm, one - am + bm, inv, dps)
        lz = mpmath.log(mpmath.mpf(zeta))
        t1 = (mpmath.gamma(cm) * mpmath.gamma(bm - am)
              / (mpmath.gamma(bm) * mpmath.gamma(cm - am))
              * mpmath.exp(-am * lz) * f1)
        t2 = (mpmath.gamma(cm) * mpmath.gamma(am - bm)
              / (mpmath.gamma(am) * mpmath.gamma(cm - bm))
              * mpmath.exp(-bm * lz) * f2)
        return complex(t1 + t2)


def gauss_2f1(a, b, c, x, degenerate_nudge: float = 1e-9) -> complex:
    """Gauss hypergeometric F(a, b; c; x) for real x <= 0.

    Series (Pfaff-stabilized) up to |x| = 1.1, connection formula beyond;
    both branches are evaluated and compared on the overlap 0.9 < |x| <= 1.1.
    degenerate_nudge displaces b off the a - b in Z slice where the
    continuation coefficients hit gamma poles.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"F(a,b;c;x) pole: c = {c} is a nonpositive integer")
    x = float(x)
    if x > 0.0:
        raise DomainError("gauss_2f1 is defined here for x <= 0 only")
    if x == 0.0:
        return complex(1.0)
    ax = abs(x)
    if ax <= 0.9:
        return _f_regular(a, b, c, x)
    if ax <= 1.1:
        v1 = _f_regular(a, b, c, x)
        v2 = _f_continuation(a, b, c, x, degenerate_nudge)
        if abs(v1 - v2) > 1e-9 * max(1.0, abs(v1)):
            raise ConvergenceError(
                f"hypergeometric branches disagree at x = {x}: {v1} vs {v2}")
        return v1
    return _f_continuation(a, b, c, x, degenerate_nudge)


def gauss_2f1_dx(a, b, c, x, degenerate_nudge: float = 1e-9) -> complex:
    """d/dx F(a,b;c;x) = (ab/c) F(a+1, b+1; c+1; x)."""
    a = complex(a)
    b = complex(b)
    c = complex(c)
    return a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, x, degenerate_nudge)


# ---------------------------------------------------------------------------
# Bessel / Hankel, orders 0 and 1
# ---------------------------------------------------------------------------

def bessel_j01_y01(order: int, x: float):
    """(J_n(x), Y_n(x)) for n in {0, 1}, x > 0."""
    if order not in (0, 1):
        raise DomainError(f"order must be 0 or 1, got {order}")
    if not x > 0.0:
        raise DomainError(f"Bessel argument must be positive, got {x}")
    if order == 0:
        return float(_sp_j0(x)), float(_sp_y0(x))
    return float(_sp_j1(x)), float(_sp_y1(x))


def hankel(order: int, x: float) -> complex:
    """H_n(x) = J_n(x) + i Y_n(x), first kind."""
    j, y = bessel_j01_y01(order, x)
    return complex(j, y)


# ---------------------------------------------------------------------------
# Legendre P_nu / Q_nu of real degree on [0, 1)
# ---------------------------------------------------------------------------

def _legendre_p_arg(nu, w, one_minus_w, dps):
    """F(-nu, nu+1; 1; w) for w in [0, 1): direct series or the log formula.

    one_minus_w must be the exactly-known complement 1 - w (it enters the
    logarithm of the w -> 1 connection formula, where recomputing it from w
    would lose every digit).
    """
    with mpmath.workdps(dps):
        nu_m = mpmath.mpf(nu)
        a = -nu_m
        b = nu_m + 1
        if w <= 0.75:
            x = mpmath.mpf(w)
            s = mpmath.mpc(1.0)
            term = mpmath.mpc(1.0)
            for n in range(_MAX_TERMS):
                term = term * (a + n) * (b + n) * x / ((1 + n) * (n + 1))
                s += term
                if abs(term) < _STOP_REL * abs(s):
                    break
            else:
                raise ConvergenceError("Legendre series did not converge")
            return s
        # near w = 1: logarithmic connection formula for c = a + b
        h = mpmath.mpf(one_minus_w)
        lnh = mpmath.log(h)
        pref = 1.0 / (mpmath.gamma(a) * mpmath.gamma(b))
        s = mpmath.mpc(0.0)
        coef = mpmath.mpf(1.0)
        for k in range(_MAX_TERMS):
            bracket = (2 * mpmath.digamma(k + 1) - mpmath.digamma(a + k)
                       - mpmath.digamma(b + k) - lnh)
            term = coef * bracket * h ** k
            s += term
            if k > 2 and abs(term) < _STOP_REL * abs(s):
                break
            coef = coef * (a + k) * (b + k) / ((k + 1) * (k + 1))
        else:
            raise ConvergenceError("Legendre log-branch series did not converge")
        return pref * s


def _legendre_pair_noninteger(nu, xi, omx, dps):
    """(P_nu(xi), Q_nu(xi)) for non-integer nu, mpmath values; omx = 1 - xi."""
    with mpmath.workdps(dps):
        p_pos = _legendre_p_arg(nu, omx / 2.0, 1.0 - omx / 2.0, dps)
        p_neg = _legendre_p_arg(nu, (1.0 + xi) / 2.0, omx / 2.0, dps)
        nupi = mpmath.pi * nu
        q = (mpmath.pi / (2 * mpmath.sin(nupi))) * (mpmath.cos(nupi) * p_pos - p_neg)
        return p_pos, q


def _legendre_pair_integer(n, xi, omx, dps):
    """Exact-degree branch: closed P_0/P_1, Q_0/Q_1 plus forward recurrence."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(xi)
        p = [mpmath.mpf(1.0), x]
        q0 = mpmath.mpf(0.5) * mpmath.log((2.0 - mpmath.mpf(omx)) / mpmath.mpf(omx))
        q = [q0, x * q0 - 1]
        for k in range(1, n + 1):
            p.append(((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1))
            q.append(((2 * k + 1) * x * q[k] - k * q[k - 1]) / (k + 1))
        return p[n], q[n], p[n + 1], q[n + 1]


def legendre_pq(nu: float, xi: float, one_minus_xi: float | None = None):
    """(P_nu, Q_nu, P_nu', Q_nu') at xi in [0, 1); derivatives w.r.t. xi.

    P is evaluated through its hypergeometric representation, Q through the
    P_nu(+-xi) connection (closed forms and a recurrence at integer degree);
    derivatives use (1-xi^2) d/dxi P_nu = (nu+1)[xi P_nu - P_{nu+1}].

    Pass one_minus_xi when the complement is known exactly (e.g. from
    1 - tanh x = 2 e^{-2x}/(1 + e^{-2x})): Q contains log(1 - xi), which is
    hopeless when the complement has been rounded through xi itself.
    """
    omx = one_minus_xi if one_minus_xi is not None else 1.0 - xi
    if omx <= 0.0 or xi < 0.0:
        if omx == 0.0:
            raise LogarithmicSingularityError(
                "Q_nu diverges (logarithmically) at xi = 1")
        raise DomainError(f"xi must lie in [0, 1), got xi={xi}, 1-xi={omx}")
    if nu < 0.0:
        raise DomainError(f"degree nu must be >= 0, got {nu}")

    dps = 30 + int(nu)
    near = round(nu)
    if abs(nu - near) < 1e-9:
        p, q, p1, q1 = _legendre_pair_integer(int(near), xi, omx, dps)
        nu_eff = float(near)
    else:
        with mpmath.workdps(dps):
            p, q = _legendre_pair_noninteger(nu, xi, omx, dps)
            p1, q1 = _legendre_pair_noninteger(nu + 1.0, xi, omx, dps)
        nu_eff = nu

    with mpmath.workdps(dps):
        x = mpmath.mpf(xi)
        fac = (nu_eff + 1) / (mpmath.mpf(omx) * (2.0 - mpmath.mpf(omx)))
        dp = fac * (x * p - p1)
        dq = fac * (x * q - q1)
        return (float(mpmath.re(p)), float(mpmath.re(q)),
                float(mpmath.re(dp)), float(mpmath.re(dq)))


def legendre_p0q0(nu: float):
    """Closed gamma-function values (P_nu(0), Q_nu(0)).

    At integer degree the sin/cos prefactors cancel the gamma pole; those
    values come from the recurrence branch instead.
    """
    near = round(nu)
    if abs(nu - near) < 1e-12:
        p, q, _, _ = _legendre_pair_integer(int(near), 0.0, 1.0, 40)
        return float(p), float(q)
    with mpmath.workdps(40):
        nu_m = mpmath.mpf(nu)
        g1 = mpmath.gamma((nu_m + 1) / 2)
        g2 = mpmath.gamma(-nu_m / 2)
        p0 = -mpmath.sin(nu_m * mpmath.pi) / (2 * mpmath.pi ** mpmath.mpf(1.5)) * g1 * g2
        q0 = (1 - mpmath.cos(nu_m * mpmath.pi)) / (4 * mpmath.sqrt(mpmath.pi)) * g1 * g2
        return float(p0), float(q0)
