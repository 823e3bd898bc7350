"""Special-function evaluation with paired value/derivative results.

Confluent and Gauss hypergeometric functions, Whittaker functions, the error
function family, and the incomplete gamma/beta integrals — everything the
closed-form solution bases are built from. Each public function returns an
FnValue carrying the value and the derivative with respect to the final
argument, so solution members can be assembled with exact product/chain rules
(no finite differencing inside the library).

Numeric architecture
--------------------
Every function is computed by a kernel written against a minimal scalar
context. The default context is double precision (builtin complex, Lanczos
gamma). Kernels track a running cancellation estimate — the peak magnitude
reached by partial sums/terms divided by the final magnitude. When the
estimate exceeds CANCEL_LIMIT (so double precision could not deliver ~1e-13
relative accuracy), the same kernel is re-run on mpmath scalars at a working
precision chosen from the estimate. Series termination in the double context
follows the fixed rule: stop once |term| < 1e-16 |sum| three consecutive
times, with a hard cap of MAX_TERMS_DEFAULT terms (override via the
HEUN_AIR_MAX_TERMS environment variable).

Branches: all fractional powers and logarithms are principal, arg in
(-pi, pi], defined on the negative real axis and continuous from above (the
C99/cmath convention, which mpmath shares). Functions whose defining data is
genuinely undefined at a point raise instead (DomainError/BranchError).
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import mpmath as mp

from .errors import (BranchError, ConvergenceError, DomainError,
                     NonFiniteError, ParamError, PoleError)
from .numkernel import as_complex

ENV_MAX_TERMS = "HEUN_AIR_MAX_TERMS"
MAX_TERMS_DEFAULT = 10000

#: Double-context series termination: |term| < SERIES_EPS*|sum|, three in a row.
SERIES_EPS = 1e-16
CONSECUTIVE_BELOW = 3

#: Cancellation estimate above which a kernel is re-run on mpmath scalars.
CANCEL_LIMIT = 1e3

#: Integer-proximity tolerance for parameter preconditions.
INT_TOL = 1e-9

#: Kummer transformation applied inside the 1F1 kernel only below this real
#: part; mild alternation (Re z in (-2,0)) is summed directly.
KUMMER_RE_THRESHOLD = -2.0

#: erf/erfi guaranteed evaluation domain.
ERF_MAX_ABS = 12.0


def max_terms() -> int:
    """Series term cap, overridable via HEUN_AIR_MAX_TERMS."""
    raw = os.environ.get(ENV_MAX_TERMS)
    if raw is None:
        return MAX_TERMS_DEFAULT
    try:
        n = int(raw)
    except ValueError:
        raise ParamError(f"{ENV_MAX_TERMS} must be a positive integer, got {raw!r}")
    if n <= 0:
        raise ParamError(f"{ENV_MAX_TERMS} must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class FnValue:
    """Function value and derivative with respect to the final argument."""

    value: complex
    derivative: complex


def near_integer(w, tol: float = INT_TOL) -> bool:
    w = complex(w)
    return abs(w.imag) <= tol and abs(w.real - round(w.real)) <= tol


def near_nonpositive_integer(w, tol: float = INT_TOL) -> bool:
    w = complex(w)
    return near_integer(w, tol) and round(w.real) <= 0


# ---------------------------------------------------------------------------
# Lanczos gamma (double precision), g = 7, 9 coefficients
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def gamma(z) -> complex:
    """Complete gamma function (Lanczos approximation, reflection for
    Re(z) < 0.5). Accurate to ~1e-13 relative for moderate |z|."""
    z = as_complex(z)
    if near_nonpositive_integer(z):
        # sin(pi z) in the reflection below is never exactly zero in floating
        # point, and within 1e-9 of a pole the result has no usable accuracy
        raise PoleError(f"gamma pole at {z!r}")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1.0 - z))
    zz = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (zz + 0.5) * cmath.exp(-t) * acc


def rgamma(z) -> complex:
    """Reciprocal gamma, exact zeros at (near-)nonpositive integers."""
    z = as_complex(z)
    if near_nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return cmath.sin(cmath.pi * z) * gamma(1.0 - z) / cmath.pi
    return 1.0 / gamma(z)


def principal_power(z, w) -> complex:
    """z**w on the principal branch (arg in (-pi, pi], defined on the
    negative real axis). Zero base: 0**0 = 1, 0**w = 0 for Re(w) > 0,
    DomainError otherwise."""
    z = as_complex(z)
    w = as_complex(w)
    if z == 0:
        if w == 0:
            return 1.0 + 0j
        if w.real > 0:
            return 0j
        raise DomainError(f"0 raised to power {w!r} with nonpositive real part")
    return cmath.exp(w * cmath.log(z))


# ---------------------------------------------------------------------------
# Scalar contexts
# ---------------------------------------------------------------------------

class _DoubleCtx:
    """Double-precision scalar context (builtin complex)."""

    hp = False
    eps = SERIES_EPS
    tiny = 5e-324

    @staticmethod
    def c(z):
        return complex(z)

    @staticmethod
    def mag(z):
        return abs(z)

    @staticmethod
    def re(z) -> float:
        return complex(z).real

    exp = staticmethod(cmath.exp)
    sin = staticmethod(cmath.sin)
    pi = math.pi

    @staticmethod
    def power(z, w):
        return principal_power(z, w)

    gamma = staticmethod(gamma)
    rgamma = staticmethod(rgamma)

    @staticmethod
    def finite(z) -> bool:
        return math.isfinite(z.real) and math.isfinite(z.imag)


class _MpCtx:
    """mpmath scalar context; must run under mp.workdps(self.dps)."""

    hp = True

    def __init__(self, dps: int):
        self.dps = dps
        self.eps = mp.mpf(10) ** (4 - dps)
        self.tiny = mp.mpf(10) ** (-4 * dps)
        self.pi = mp.pi

    @staticmethod
    def c(z):
        return mp.mpc(z)

    @staticmethod
    def mag(z):
        return abs(z)

    @staticmethod
    def re(z) -> float:
        return float(mp.re(z))

    exp = staticmethod(mp.exp)
    sin = staticmethod(mp.sin)

    @staticmethod
    def power(z, w):
        z = mp.mpc(z)
        w = mp.mpc(w)
        if z == 0:
            if w == 0:
                return mp.mpc(1)
            if mp.re(w) > 0:
                return mp.mpc(0)
            raise DomainError(f"0 raised to power {w!r} with nonpositive real part")
        return mp.exp(w * mp.log(z))

    gamma = staticmethod(mp.gamma)
    rgamma = staticmethod(mp.rgamma)

    @staticmethod
    def finite(z) -> bool:
        return mp.isfinite(z)


_DOUBLE = _DoubleCtx()


def _export_cancel(peak, mag_final, ctx) -> float:
    c = peak / max(mag_final, ctx.tiny)
    try:
        f = float(c)
    except OverflowError:
        return 1e300
    if not math.isfinite(f):
        return 1e300
    return min(f, 1e300)


def _guarded(kernel, *args) -> complex:
    """Run a kernel in double precision; re-run on mpmath scalars when its
    cancellation estimate says double precision was insufficient."""
    value, cancel = kernel(_DOUBLE, *args)
    if _DOUBLE.finite(value) and cancel <= CANCEL_LIMIT:
        return value
    dps = min(180, 26 + int(math.log10(max(cancel, 1.0))) + 6)
    for _ in range(3):
        with mp.workdps(dps):
            ctx = _MpCtx(dps)
            v, cancel = kernel(ctx, *args)
            ok = ctx.finite(v) and cancel < 10.0 ** (dps - 20)
            if ok:
                try:
                    return complex(v)
                except OverflowError:
                    raise NonFiniteError("function value overflows double precision")
        dps = min(340, max(2 * dps, int(26 + math.log10(max(cancel, 1.0))) + 10))
    raise ConvergenceError("extended-precision evaluation failed to stabilize")


# ---------------------------------------------------------------------------
# Series / continued-fraction kernels (context-generic)
# ---------------------------------------------------------------------------

def _k_1f1_series(ctx, a, b, z):
    """Kummer series sum_n (a)_n/(b)_n z^n/n!; returns (sum, cancel)."""
    a, b, z = ctx.c(a), ctx.c(b), ctx.c(z)
    term = ctx.c(1)
    s = ctx.c(1)
    peak = ctx.mag(s)
    below = 0
    cap = max_terms()
    for n in range(cap):
        term = term * (a + n) / (b + n) * z / (n + 1)
        s = s + term
        m_t, m_s = ctx.mag(term), ctx.mag(s)
        if m_t > peak:
            peak = m_t
        if m_s > peak:
            peak = m_s
        if m_t < ctx.eps * m_s:
            below += 1
            if below >= CONSECUTIVE_BELOW:
                break
        else:
            below = 0
    else:
        raise ConvergenceError(
            f"1F1 series did not converge within {cap} terms (|z| = {abs(complex(z)):.3g})")
    return s, _export_cancel(peak, ctx.mag(s), ctx)


def _k_1f1(ctx, a, b, z):
    """1F1 with the Kummer transformation applied for strongly negative
    Re(z) (alternating-series rescue); returns (value, cancel)."""
    if ctx.re(z) < KUMMER_RE_THRESHOLD:
        v, cancel = _k_1f1_series(ctx, ctx.c(b) - ctx.c(a), b, -ctx.c(z))
        return ctx.exp(ctx.c(z)) * v, cancel
    return _k_1f1_series(ctx, a, b, z)


def _k_kummer_u(ctx, a, b, z):
    """U via the two-term connection formula; returns (value, cancel)."""
    a, b, z = ctx.c(a), ctx.c(b), ctx.c(z)
    m1, c1 = _k_1f1(ctx, a, b, z)
    m2, c2 = _k_1f1(ctx, a - b + 1, 2 - b, z)
    t1 = ctx.gamma(1 - b) * ctx.rgamma(a - b + 1) * m1
    t2 = ctx.gamma(b - 1) * ctx.rgamma(a) * ctx.power(z, 1 - b) * m2
    u = t1 + t2
    peak = ctx.mag(t1) * max(c1, 1.0) + ctx.mag(t2) * max(c2, 1.0)
    return u, _export_cancel(peak, ctx.mag(u), ctx)


def _k_2f1_series(ctx, a, b, c, z):
    a, b, c, z = ctx.c(a), ctx.c(b), ctx.c(c), ctx.c(z)
    term = ctx.c(1)
    s = ctx.c(1)
    peak = ctx.mag(s)
    below = 0
    cap = max_terms()
    for n in range(cap):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        s = s + term
        m_t, m_s = ctx.mag(term), ctx.mag(s)
        if m_t > peak:
            peak = m_t
        if m_s > peak:
            peak = m_s
        if m_t < ctx.eps * m_s:
            below += 1
            if below >= CONSECUTIVE_BELOW:
                break
        else:
            below = 0
    else:
        raise ConvergenceError(
            f"2F1 series did not converge within {cap} terms (|z| = {abs(complex(z)):.3g})")
    return s, _export_cancel(peak, ctx.mag(s), ctx)


def _k_2f1(ctx, a, b, c, z):
    """2F1 for |z| < 1. In the band |z| > 0.5 the Euler transformation
    (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) is applied when the function is
    singular-growing at z = 1 (Re(c-a-b) < 0), which is where the raw series
    conditioning degrades."""
    a, b, c, z = ctx.c(a), ctx.c(b), ctx.c(c), ctx.c(z)
    if ctx.mag(z) > 0.5 and ctx.re(c - a - b) < 0:
        v, cancel = _k_2f1_series(ctx, c - a, c - b, c, z)
        return ctx.power(1 - z, c - a - b) * v, cancel
    return _k_2f1_series(ctx, a, b, c, z)


def _k_0f1(ctx, b, z):
    b, z = ctx.c(b), ctx.c(z)
    term = ctx.c(1)
    s = ctx.c(1)
    peak = ctx.mag(s)
    below = 0
    cap = max_terms()
    for n in range(cap):
        term = term * z / ((b + n) * (n + 1))
        s = s + term
        m_t, m_s = ctx.mag(term), ctx.mag(s)
        if m_t > peak:
            peak = m_t
        if m_s > peak:
            peak = m_s
        if m_t < ctx.eps * m_s:
            below += 1
            if below >= CONSECUTIVE_BELOW:
                break
        else:
            below = 0
    else:
        raise ConvergenceError(f"0F1 series did not converge within {cap} terms")
    return s, _export_cancel(peak, ctx.mag(s), ctx)


def _k_erf_series(ctx, z):
    """erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))."""
    z = ctx.c(z)
    z2 = z * z
    term = z
    s = z
    peak = ctx.mag(s)
    below = 0
    cap = max_terms()
    for n in range(cap):
        term = term * (-z2) * (2 * n + 1) / ((n + 1) * (2 * n + 3))
        s = s + term
        m_t, m_s = ctx.mag(term), ctx.mag(s)
        if m_t > peak:
            peak = m_t
        if m_s > peak:
            peak = m_s
        # non-strict: at z = 0 every term and partial sum is exactly zero
        if m_t <= ctx.eps * m_s:
            below += 1
            if below >= CONSECUTIVE_BELOW:
                break
        else:
            below = 0
    else:
        raise ConvergenceError(f"erf series did not converge within {cap} terms")
    two_over_sqrt_pi = 2 / (ctx.pi ** ctx.c(0.5))
    return two_over_sqrt_pi * s, _export_cancel(peak, ctx.mag(s), ctx)


def _k_erfc_cf(ctx, z):
    """sqrt(pi) e^(z^2) erfc(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    via modified Lentz; valid for Re(z) > 0, efficient away from the
    imaginary axis."""
    z = ctx.c(z)
    tiny = ctx.tiny
    b0 = z
    f = b0 if ctx.mag(b0) > tiny else ctx.c(tiny)
    c_ = f
    d = ctx.c(0)
    cap = max_terms()
    for n in range(1, cap):
        a_n = ctx.c(n) / 2
        d = b0 + a_n * d
        if ctx.mag(d) < tiny:
            d = ctx.c(tiny)
        c_ = b0 + a_n / c_
        if ctx.mag(c_) < tiny:
            c_ = ctx.c(tiny)
        d = 1 / d
        delta = c_ * d
        f = f * delta
        if ctx.mag(delta - 1) < ctx.eps:
            break
    else:
        raise ConvergenceError(f"erfc continued fraction did not converge within {cap} terms")
    return f  # = 1 / (sqrt(pi) e^(z^2) erfc(z)) reciprocal handled by caller


def _k_erf(ctx, z):
    """erf kernel: power series for |z| <= 3 and near the imaginary axis,
    continued fraction on erfc elsewhere; returns (value, cancel)."""
    z = ctx.c(z)
    az = ctx.mag(z)
    if az <= 3.0 or abs(ctx.re(z)) < az / 4:
        return _k_erf_series(ctx, z)
    w = z if ctx.re(z) > 0 else -z
    f = _k_erfc_cf(ctx, w)
    sqrt_pi = ctx.pi ** ctx.c(0.5)
    erfc_w = ctx.exp(-w * w) / sqrt_pi / f
    erf_w = 1 - erfc_w
    cancel = _export_cancel(1 + ctx.mag(erfc_w), ctx.mag(erf_w), ctx)
    value = erf_w if ctx.re(z) > 0 else -erf_w
    return value, cancel


def _k_igam_upper_cf(ctx, a, z):
    """Legendre continued fraction for Gamma(a,z), Re(z) > 0, |z| large:
    Gamma(a,z) = e^(-z) z^a / (z+1-a - 1(1-a)/(z+3-a - 2(2-a)/(...)))."""
    a, z = ctx.c(a), ctx.c(z)
    tiny = ctx.tiny
    b0 = z + 1 - a
    f = b0 if ctx.mag(b0) > tiny else ctx.c(tiny)
    c_ = f
    d = ctx.c(0)
    cap = max_terms()
    for n in range(1, cap):
        a_n = -n * (n - a)
        b_n = z + 2 * n + 1 - a
        d = b_n + a_n * d
        if ctx.mag(d) < tiny:
            d = ctx.c(tiny)
        c_ = b_n + a_n / c_
        if ctx.mag(c_) < tiny:
            c_ = ctx.c(tiny)
        d = 1 / d
        delta = c_ * d
        f = f * delta
        if ctx.mag(delta - 1) < ctx.eps:
            break
    else:
        raise ConvergenceError(
            f"incomplete-gamma continued fraction did not converge within {cap} terms")
    return ctx.exp(-z) * ctx.power(z, a) / f, 1.0


def _k_igam_upper(ctx, a, z):
    """Upper incomplete gamma; complement series for small/left-plane z,
    continued fraction for large right-plane z; returns (value, cancel)."""
    a, z = ctx.c(a), ctx.c(z)
    az = ctx.mag(z)
    if ctx.re(z) > 0 and az >= max(6.0, abs(complex(a)) + 2.0):
        return _k_igam_upper_cf(ctx, a, z)
    # Gamma(a) - z^a e^(-z) sum_n z^n / (a (a+1) ... (a+n))
    term = 1 / a
    s = term
    peak = ctx.mag(s)
    below = 0
    cap = max_terms()
    for n in range(cap):
        term = term * z / (a + n + 1)
        s = s + term
        m_t, m_s = ctx.mag(term), ctx.mag(s)
        if m_t > peak:
            peak = m_t
        if m_s > peak:
            peak = m_s
        if m_t < ctx.eps * m_s:
            below += 1
            if below >= CONSECUTIVE_BELOW:
                break
        else:
            below = 0
    else:
        raise ConvergenceError(
            f"incomplete-gamma series did not converge within {cap} terms")
    lower = ctx.power(z, a) * ctx.exp(-z) * s
    g = ctx.gamma(a)
    v = g - lower
    series_cancel = _export_cancel(peak, ctx.mag(s), ctx)
    peak_outer = ctx.mag(g) + ctx.mag(lower) * max(series_cancel, 1.0)
    return v, _export_cancel(peak_outer, ctx.mag(v), ctx)


def _k_inc_beta(ctx, x, a, b):
    """B_x(a,b) = x^a/a 2F1(a, 1-b; a+1; x); returns (value, cancel)."""
    x, a, b = ctx.c(x), ctx.c(a), ctx.c(b)
    f, cancel = _k_2f1(ctx, a, 1 - b, a + 1, x)
    return ctx.power(x, a) / a * f, cancel


# ---------------------------------------------------------------------------
# Public functions
# ---------------------------------------------------------------------------

def hyp1f1(a, b, z) -> FnValue:
    """Confluent hypergeometric M(a; b; z) and d/dz = (a/b) M(a+1; b+1; z).

    b must not lie within 1e-9 of a nonpositive integer. Entire in z; the
    guaranteed accuracy target is ~1e-12 relative for |z| <= 50.
    """
    a, b, z = as_complex(a), as_complex(b), as_complex(z)
    if near_nonpositive_integer(b):
        raise ParamError(f"1F1 undefined: b = {b!r} at a nonpositive integer")
    value = _guarded(_k_1f1, a, b, z)
    deriv = (a / b) * _guarded(_k_1f1, a + 1, b + 1, z)
    return FnValue(value, deriv)


def kummer_u(a, b, z) -> FnValue:
    """Kummer U(a; b; z) via the two-term 1F1 connection formula, with
    d/dz = -a U(a+1; b+1; z).

    b must not lie within 1e-9 of any integer (the connection formula's gamma
    factors degenerate there); z must be nonzero.
    """
    a, b, z = as_complex(a), as_complex(b), as_complex(z)
    if near_integer(b):
        raise ParamError(f"U connection formula degenerate: b = {b!r} at an integer")
    if z == 0:
        raise DomainError("U undefined at z = 0")
    value = _guarded(_k_kummer_u, a, b, z)
    deriv = -a * _guarded(_k_kummer_u, a + 1, b + 1, z)
    return FnValue(value, deriv)


def hyp2f1(a, b, c, z) -> FnValue:
    """Gauss 2F1(a, b; c; z) inside the unit disk, with
    d/dz = (ab/c) 2F1(a+1, b+1; c+1; z).

    c must not lie within 1e-9 of a nonpositive integer; |z| >= 1 is refused.
    Accuracy target ~1e-11 relative for |z| <= 0.95.
    """
    a, b, c, z = as_complex(a), as_complex(b), as_complex(c), as_complex(z)
    if near_nonpositive_integer(c):
        raise ParamError(f"2F1 undefined: c = {c!r} at a nonpositive integer")
    if abs(z) >= 1.0:
        raise DomainError(f"2F1 series domain is |z| < 1, got |z| = {abs(z):.6g}")
    value = _guarded(_k_2f1, a, b, c, z)
    deriv = (a * b / c) * _guarded(_k_2f1, a + 1, b + 1, c + 1, z)
    return FnValue(value, deriv)


def hyp0f1(b, z) -> FnValue:
    """Limit hypergeometric 0F1(; b; z) with d/dz = (1/b) 0F1(; b+1; z)."""
    b, z = as_complex(b), as_complex(z)
    if near_nonpositive_integer(b):
        raise ParamError(f"0F1 undefined: b = {b!r} at a nonpositive integer")
    value = _guarded(_k_0f1, b, z)
    deriv = (1 / b) * _guarded(_k_0f1, b + 1, z)
    return FnValue(value, deriv)


def whittaker(kind: str, mu, nu, z) -> FnValue:
    """Whittaker functions M/W(mu, nu, z) = z^(nu+1/2) e^(-z/2) {1F1|U}(a;b;z)
    with a = 1/2 - mu + nu, b = 1 + 2 nu, on the principal branch of the
    power. Derivative is with respect to z.
    """
    mu, nu, z = as_complex(mu), as_complex(nu), as_complex(z)
    if kind not in ("M", "W"):
        raise ParamError(f"whittaker kind must be 'M' or 'W', got {kind!r}")
    if z == 0:
        raise DomainError("Whittaker functions undefined at z = 0")
    a = 0.5 - mu + nu
    b = 1.0 + 2.0 * nu
    inner = hyp1f1(a, b, z) if kind == "M" else kummer_u(a, b, z)
    pref = principal_power(z, nu + 0.5) * cmath.exp(-z / 2)
    value = pref * inner.value
    deriv = pref * (((nu + 0.5) / z - 0.5) * inner.value + inner.derivative)
    return FnValue(value, deriv)


def erf_like(kind: str, z) -> FnValue:
    """Error function family: kind 'erf' or 'erfi' (erfi(z) = -i erf(iz)),
    with derivatives 2/sqrt(pi) e^(-+z^2). Guaranteed for |z| <= 12."""
    z = as_complex(z)
    if kind not in ("erf", "erfi"):
        raise ParamError(f"erf_like kind must be 'erf' or 'erfi', got {kind!r}")
    if abs(z) > ERF_MAX_ABS:
        raise ConvergenceError(
            f"erf/erfi guaranteed only for |z| <= {ERF_MAX_ABS:g}, got |z| = {abs(z):.6g}")
    if kind == "erf":
        value = _guarded(_k_erf, z)
        deriv = 2.0 / math.sqrt(math.pi) * cmath.exp(-z * z)
    else:
        value = -1j * _guarded(_k_erf, 1j * z)
        deriv = 2.0 / math.sqrt(math.pi) * cmath.exp(z * z)
    return FnValue(value, deriv)


def inc_gamma_upper(a, z) -> FnValue:
    """Upper incomplete gamma Gamma(a, z) with d/dz = -z^(a-1) e^(-z).

    z = 0 requires Re(a) > 0 (the complete gamma); elsewhere the principal
    branch of z^a is used. For z = 0 the derivative additionally requires
    Re(a) >= 1.
    """
    a, z = as_complex(a), as_complex(z)
    if z == 0:
        if a.real <= 0:
            raise DomainError("Gamma(a, 0) requires Re(a) > 0")
        value = gamma(a)
        if a == 1:
            return FnValue(value, -1.0 + 0j)
        if a.real > 1:
            return FnValue(value, 0j)
        raise DomainError("derivative of Gamma(a, z) at z = 0 unbounded for Re(a) < 1")
    if near_nonpositive_integer(a):
        az = abs(z)
        if not (z.real > 0 and az >= max(6.0, abs(a) + 2.0)):
            raise ParamError(
                f"Gamma(a, z) series route undefined at nonpositive integer a = {a!r}")
    value = _guarded(_k_igam_upper, a, z)
    deriv = -principal_power(z, a - 1) * cmath.exp(-z)
    return FnValue(value, deriv)


def inc_beta(x, a, b) -> FnValue:
    """Incomplete beta B_x(a, b) = x^a/a 2F1(a, 1-b; a+1; x) with
    d/dx = x^(a-1) (1-x)^(b-1).

    a must not lie within 1e-9 of a nonpositive integer; real x in [1, inf)
    is refused (the integral's endpoint singularity / cut), and |x| >= 1 is
    outside the series domain.
    """
    x, a, b = as_complex(x), as_complex(a), as_complex(b)
    if near_nonpositive_integer(a):
        raise ParamError(f"B_x(a, b) undefined: a = {a!r} at a nonpositive integer")
    if x.imag == 0 and x.real >= 1.0:
        raise BranchError(f"B_x undefined for real x >= 1, got x = {x.real:.6g}")
    if abs(x) >= 1.0:
        raise DomainError(f"B_x series domain is |x| < 1, got |x| = {abs(x):.6g}")
    value = _guarded(_k_inc_beta, x, a, b)
    deriv = principal_power(x, a - 1) * principal_power(1 - x, b - 1)
    return FnValue(value, deriv)
