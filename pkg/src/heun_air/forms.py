"""Equation families, normal forms, and parameter maps.

Three solvable families of linear second-order equations are handled, named
by the location/type of their singularities:

* BHE(sigma, tau)        — regular point at 0, irregular at infinity;
* CHE(lambda, sigma, tau) — regular points at 0 and 1, irregular at infinity;
* GHE(a, delta, sigma, tau) — regular points at 0, 1, a and infinity.

Every family instance owns a normal-form equation y'' = q(x) y with rational
q; this module builds q, recognizes membership of a given q (detection),
and converts between three parametrizations: family parameters, normal-form
pole coefficients (NormalParams) and the classical canonical parameters
(CanonicalParams). Detection maps return *all* algebraic branches; an empty
list means "not in the family".
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParamError
from .numkernel import (POLY_ONE, POLY_X, Poly, RAT_ZERO, RatFun, as_complex,
                        rat_derivative, rat_eval)

#: Acceptance tolerance for fixed/dependent parameter constraints during
#: detection (relative to max(1, magnitudes involved)).
CONSTRAINT_TOL = 1e-8

#: Least-squares extraction of pole coefficients must fit this well.
EXTRACT_RESIDUAL_TOL = 1e-9

#: Parameters smaller than this are treated as the excluded degenerate value.
DEGENERACY_TOL = 1e-12


def _close(u, v, scale_floor: float = 1.0, tol: float = CONSTRAINT_TOL) -> bool:
    u, v = complex(u), complex(v)
    return abs(u - v) <= tol * max(scale_floor, abs(u), abs(v))


@dataclass(frozen=True)
class LinearODE:
    """y'' = c1(x) y' + c0(x) y with rational coefficients."""

    c1: RatFun
    c0: RatFun


@dataclass(frozen=True)
class BHEFamily:
    """Two-parameter family with normal form
    q = x^2 + 2 sigma x + tau^2 + tau/x + 3/(4 x^2)."""

    sigma: complex
    tau: complex
    kind = "BHE"

    def __init__(self, sigma, tau):
        object.__setattr__(self, "sigma", as_complex(sigma))
        object.__setattr__(self, "tau", as_complex(tau))


@dataclass(frozen=True)
class CHEFamily:
    """Three-parameter family (lam is the parameter named lambda in job
    specifications; lambda = 0 leaves the family and is rejected)."""

    lam: complex
    sigma: complex
    tau: complex
    kind = "CHE"

    def __init__(self, lam, sigma, tau):
        lam = as_complex(lam)
        if abs(lam) <= DEGENERACY_TOL:
            raise ParamError("CHE requires lambda != 0")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "sigma", as_complex(sigma))
        object.__setattr__(self, "tau", as_complex(tau))


@dataclass(frozen=True)
class GHEFamily:
    """Four-parameter family; the third regular point a must avoid {0, 1}
    and delta = 0 leaves the family."""

    a: complex
    delta: complex
    sigma: complex
    tau: complex
    kind = "GHE"

    def __init__(self, a, delta, sigma, tau):
        a = as_complex(a)
        delta = as_complex(delta)
        if abs(a) <= DEGENERACY_TOL or abs(a - 1) <= DEGENERACY_TOL:
            raise ParamError(f"GHE requires a outside {{0, 1}}, got a = {a!r}")
        if abs(delta) <= DEGENERACY_TOL:
            raise ParamError("GHE requires delta != 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "sigma", as_complex(sigma))
        object.__setattr__(self, "tau", as_complex(tau))


Family = BHEFamily | CHEFamily | GHEFamily

_NORMAL_KEYS = {
    "BHE": ("B", "C", "D", "E"),
    "CHE": ("A", "B", "C", "D", "E"),
    "GHE": ("a", "A", "B", "D", "E", "F"),
}

_CANONICAL_KEYS = {
    "BHE": ("alpha", "beta", "gamma", "delta"),
    "CHE": ("alpha", "beta", "gamma", "delta", "eta"),
    "GHE": ("alpha", "beta", "gamma", "delta", "epsilon", "a", "q"),
}


@dataclass(frozen=True)
class NormalParams:
    """Pole coefficients of a normal form q, keyed per family:
    BHE: q = x^2 - B x - C - D/x - E/x^2
    CHE: q = -A - B/x - C/(x-1) - D/x^2 - E/(x-1)^2
    GHE: q = -A/x - B/(x-1) + (A+B)/(x-a) - D/x^2 - E/(x-1)^2 - F/(x-a)^2
    """

    family: str
    values: dict

    def __init__(self, family: str, values: dict):
        if family not in _NORMAL_KEYS:
            raise ParamError(f"unknown family {family!r}")
        want = _NORMAL_KEYS[family]
        if set(values) != set(want):
            raise ParamError(
                f"{family} normal parameters need keys {sorted(want)}, got {sorted(values)}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "values", {k: as_complex(values[k]) for k in want})

    def __getitem__(self, key: str) -> complex:
        return self.values[key]


@dataclass(frozen=True)
class CanonicalParams:
    """Classical canonical parameters of each family's standard form."""

    family: str
    values: dict

    def __init__(self, family: str, values: dict):
        if family not in _CANONICAL_KEYS:
            raise ParamError(f"unknown family {family!r}")
        want = _CANONICAL_KEYS[family]
        if set(values) != set(want):
            raise ParamError(
                f"{family} canonical parameters need keys {sorted(want)}, got {sorted(values)}")
        vals = {k: as_complex(values[k]) for k in want}
        if family == "GHE":
            lhs = (vals["gamma"] + vals["delta"] + vals["epsilon"]
                   - vals["alpha"] - vals["beta"] - 1)
            if abs(lhs) > 1e-10 * max(1.0, *(abs(v) for v in vals.values())):
                raise ParamError(
                    "GHE canonical parameters must satisfy "
                    f"gamma+delta+epsilon-alpha-beta-1 = 0, got {lhs!r}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, key: str) -> complex:
        return self.values[key]


# ---------------------------------------------------------------------------
# Normal form of a general linear ODE
# ---------------------------------------------------------------------------

def to_normal_form(ode: LinearODE) -> tuple[RatFun, RatFun]:
    """Gauge away the first-derivative term of y'' = c1 y' + c0 y.

    Writing y = exp(g) u with gauge exponent g' = c1/2 gives u'' = q u with
    q = c0 + c1^2/4 - c1'/2. Returns (q, gauge_exponent_derivative = c1/2).
    """
    c1, c0 = ode.c1, ode.c0
    q = c0 + (c1 * c1).scale(0.25) - rat_derivative(c1).scale(0.5)
    return q, c1.scale(0.5)


# ---------------------------------------------------------------------------
# family -> normal form
# ---------------------------------------------------------------------------

def family_to_normal(f: Family) -> LinearODE:
    """Normal-form equation y'' = q(x) y of a family instance (c1 = 0)."""
    if isinstance(f, BHEFamily):
        s, t = f.sigma, f.tau
        q = RatFun(Poly((0.75, t, t * t, 2 * s, 1)), Poly((0, 0, 1)))
    elif isinstance(f, CHEFamily):
        lam, s, t = f.lam, f.sigma, f.tau
        l2 = lam * lam
        q = (RatFun.const(l2)
             + RatFun(2 * (s - 1) * l2 - t * lam + 0.5, POLY_X)
             + RatFun(t * lam - 0.5, Poly((-1, 1)))
             + RatFun((t * t - 2 * s + 1) * l2 - 0.25, Poly((0, 0, 1)))
             + RatFun(0.75, Poly((1, -2, 1))))
    elif isinstance(f, GHEFamily):
        a, d, s, t = f.a, f.delta, f.sigma, f.tau
        d2 = d * d
        q = (RatFun((2 * a * a * (a - 1) * d2 - 2 * s * a * (2 * a - 1) * d
                     + (2 * t * t - 0.5) * a + t + 0.5) / a, POLY_X)
             + RatFun(-2 * (a * (a - 1) ** 2 * d2 - s * (2 * a - 1) * (a - 1) * d
                            + (t - 0.5) * ((t + 0.5) * a - t)) / (a - 1), Poly((-1, 1)))
             + RatFun((t - a + 0.5) / (a * (a - 1)), Poly((-a, 1)))
             + RatFun(a * a * d2 - 2 * a * s * d + t * t - 0.25, Poly((0, 0, 1)))
             + RatFun((a - 1) ** 2 * d2 - 2 * s * (a - 1) * d + t * t - 0.25,
                      Poly((1, -2, 1)))
             + RatFun(0.75, Poly((a * a, -2 * a, 1))))
    else:
        raise ParamError(f"unsupported family object {type(f).__name__}")
    return LinearODE(RAT_ZERO, q)


# ---------------------------------------------------------------------------
# family -> normal parameters (closed formulas)
# ---------------------------------------------------------------------------

def family_to_normal_params(f: Family) -> NormalParams:
    """Pole coefficients of the family normal form, by closed formula."""
    if isinstance(f, BHEFamily):
        s, t = f.sigma, f.tau
        return NormalParams("BHE", {"B": -2 * s, "C": -t * t, "D": -t, "E": -0.75})
    if isinstance(f, CHEFamily):
        lam, s, t = f.lam, f.sigma, f.tau
        l2 = lam * lam
        return NormalParams("CHE", {
            "A": -l2,
            "B": 2 * (1 - s) * l2 + t * lam - 0.5,
            "C": 0.5 - t * lam,
            "D": 0.25 + (2 * s - t * t - 1) * l2,
            "E": -0.75,
        })
    if isinstance(f, GHEFamily):
        a, d, s, t = f.a, f.delta, f.sigma, f.tau
        d2 = d * d
        return NormalParams("GHE", {
            "a": a,
            "A": (-2 * a * (a - 1) * d2 + 2 * (2 * a - 1) * s * d
                  - 2 * t * t - (t + 0.5) / a + 0.5),
            "B": (2 * a * (a - 1) * d2 - 2 * (2 * a - 1) * s * d
                  + 2 * t * t + (t - a / 2) / (a - 1)),
            "D": -a * a * d2 + 2 * a * s * d - t * t + 0.25,
            "E": -(a - 1) ** 2 * d2 + 2 * (a - 1) * s * d - t * t + 0.25,
            "F": -0.75,
        })
    raise ParamError(f"unsupported family object {type(f).__name__}")


# ---------------------------------------------------------------------------
# extraction: q -> normal parameters (evaluation + least squares)
# ---------------------------------------------------------------------------

def _sample_points(poles: list[complex], count: int = 12) -> list[complex]:
    # two rings around the singularity cluster: resolves both the second-order
    # pole coefficients (inner ring) and the 1/x tails (outer ring)
    pts = []
    k = 0
    while len(pts) < count and k < 400:
        radius = 0.85 if k % 2 == 0 else 2.4
        angle = 0.4 + 2.39996 * k  # golden-angle stepping, never periodic
        x = 0.5 + radius * cmath.exp(1j * angle)
        k += 1
        if all(abs(x - p) >= 0.2 for p in poles):
            pts.append(x)
    if len(pts) < count:
        raise DomainError("could not place extraction sample points away from poles")
    return pts


def _fit(q: RatFun, basis, poles) -> tuple[np.ndarray, float]:
    pts = _sample_points(poles)
    mat = np.array([[b(x) for b in basis] for x in pts], dtype=complex)
    rhs = np.array([rat_eval(q, x) for x in pts], dtype=complex)
    coef, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    resid = np.linalg.norm(mat @ coef - rhs) / max(1.0, np.linalg.norm(rhs))
    return coef, float(resid)


def _clustered_roots(p: Poly, radius: float = 5e-3) -> list[complex]:
    """Distinct denominator roots, with multiple-root clusters collapsed to
    their mean. A numerically split m-fold root scatters its copies
    symmetrically (leading error ~eps^(1/m) around the true root), so the
    cluster mean recovers the root to ~eps^(2/m)."""
    if p.degree < 1:
        return []
    roots = sorted((complex(r) for r in np.roots(list(reversed(p.coeffs)))),
                   key=lambda r: (r.real, r.imag))
    clusters: list[list[complex]] = []
    for r in roots:
        for cl in clusters:
            if abs(r - cl[0]) <= radius:
                cl.append(r)
                break
        else:
            clusters.append([r])
    return [sum(cl) / len(cl) for cl in clusters]


def extract_normal_params(q, family: str, a=None) -> NormalParams:
    """Recover pole coefficients of q by sampling at 12 generic points and
    least-squares fitting against the family's pole basis. The fit residual
    must be below EXTRACT_RESIDUAL_TOL or the q is declared outside the
    family's normal shape (DomainError).

    Accepts a RatFun q or a LinearODE (normal-formed first if c1 != 0). For
    GHE the third singular point a is located from the denominator roots
    when not supplied.
    """
    if isinstance(q, LinearODE):
        q = q.c0 if q.c1.num.is_zero() else to_normal_form(q)[0]
    if family == "BHE":
        basis = [lambda x: x * x, lambda x: x, lambda x: 1.0,
                 lambda x: 1 / x, lambda x: 1 / (x * x)]
        coef, resid = _fit(q, basis, [0.0])
        if resid > EXTRACT_RESIDUAL_TOL:
            raise DomainError(f"q is not a BHE normal form (fit residual {resid:.3g})")
        if abs(coef[0] - 1) > 1e-7:
            raise DomainError(
                f"q is not a BHE normal form (x^2 coefficient {coef[0]:.6g})")
        return NormalParams("BHE", {"B": -coef[1], "C": -coef[2],
                                    "D": -coef[3], "E": -coef[4]})
    if family == "CHE":
        basis = [lambda x: 1.0, lambda x: 1 / x, lambda x: 1 / (x - 1),
                 lambda x: 1 / (x * x), lambda x: 1 / (x - 1) ** 2]
        coef, resid = _fit(q, basis, [0.0, 1.0])
        if resid > EXTRACT_RESIDUAL_TOL:
            raise DomainError(f"q is not a CHE normal form (fit residual {resid:.3g})")
        return NormalParams("CHE", {"A": -coef[0], "B": -coef[1], "C": -coef[2],
                                    "D": -coef[3], "E": -coef[4]})
    if family == "GHE":
        if a is not None:
            candidates = [as_complex(a)]
        else:
            candidates = [r for r in _clustered_roots(q.den)
                          if abs(r) > 1e-4 and abs(r - 1) > 1e-4]
            if not candidates:
                raise DomainError("no third singular point found in q's denominator")
        best = None
        for cand in candidates:
            basis = [lambda x, c=cand: 1 / x, lambda x, c=cand: 1 / (x - 1),
                     lambda x, c=cand: 1 / (x - c), lambda x, c=cand: 1 / (x * x),
                     lambda x, c=cand: 1 / (x - 1) ** 2,
                     lambda x, c=cand: 1 / (x - c) ** 2]
            try:
                coef, resid = _fit(q, basis, [0.0, 1.0, cand])
            except DomainError:
                continue
            if best is None or resid < best[2]:
                best = (cand, coef, resid)
        if best is None or best[2] > EXTRACT_RESIDUAL_TOL:
            got = f"{best[2]:.3g}" if best else "n/a"
            raise DomainError(f"q is not a GHE normal form (fit residual {got})")
        cand, coef, _ = best
        params = NormalParams("GHE", {"a": cand, "A": -coef[0], "B": -coef[1],
                                      "D": -coef[3], "E": -coef[4], "F": -coef[5]})
        # structural redundancy: the residue at x = a must equal A + B
        # (the three first-order residues of q sum to zero)
        if not _close(coef[2], params["A"] + params["B"], tol=1e-7):
            raise DomainError("q's residue at x = a breaks the GHE residue relation")
        return params
    raise ParamError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# normal parameters -> family (detection, all branches)
# ---------------------------------------------------------------------------

def normal_to_family(n: NormalParams) -> list[Family]:
    """All family instances whose normal form has the given pole
    coefficients. Empty list when the fixed (E/F = -3/4) or dependent
    parameter constraints fail, i.e. the q is outside the solvable family.
    """
    if n.family == "BHE":
        B, C, D, E = n["B"], n["C"], n["D"], n["E"]
        if not _close(E, -0.75):
            return []
        if not _close(C, -D * D):
            return []
        return [BHEFamily(-B / 2, -D)]
    if n.family == "CHE":
        A, B, C, D, E = n["A"], n["B"], n["C"], n["D"], n["E"]
        if not _close(E, -0.75):
            return []
        if not _close(B, -A - D - C * C):
            return []
        lam2 = -A
        if abs(lam2) <= 1e-10:
            return []
        out = []
        for lam in (cmath.sqrt(lam2), -cmath.sqrt(lam2)):
            tau = (0.5 - C) / lam
            sigma = ((D - 0.25) / lam2 + tau * tau + 1) / 2
            out.append(CHEFamily(lam, sigma, tau))
        return out
    if n.family == "GHE":
        a, A, B, D, E, F = n["a"], n["A"], n["B"], n["D"], n["E"], n["F"]
        if not _close(F, -0.75):
            return []
        s = A + B
        e_pred = (1 - a) * (s * s * a - s * (s - 1) + (D - A) / a - D / (a * a))
        if not _close(E, e_pred):
            return []
        tau = a * (a - 1) * s + a - 0.5
        d2 = (a * A - (2 * a - 1) * (D + tau * tau - 0.25)
              + 2 * a * tau * tau + tau + 0.5 - a / 2) / (a * a)
        if abs(d2) <= 1e-10:
            return []
        out = []
        for delta in (cmath.sqrt(d2), -cmath.sqrt(d2)):
            sigma = (D + a * a * d2 + tau * tau - 0.25) / (2 * a * delta)
            out.append(GHEFamily(a, delta, sigma, tau))
        return out
    raise ParamError(f"unknown family {n.family!r}")


# ---------------------------------------------------------------------------
# canonical parameters <-> family
# ---------------------------------------------------------------------------

def canonical_to_normal(c: CanonicalParams) -> NormalParams:
    """Normal-form pole coefficients of the canonical equation (gauging away
    its first-derivative term)."""
    if c.family == "BHE":
        al, be, ga, de = c["alpha"], c["beta"], c["gamma"], c["delta"]
        return NormalParams("BHE", {"B": -be, "C": ga - be * be / 4,
                                    "D": -de / 2, "E": (1 - al * al) / 4})
    if c.family == "CHE":
        al, be, ga, de, eta = (c["alpha"], c["beta"], c["gamma"],
                               c["delta"], c["eta"])
        B = -0.5 - be - eta
        return NormalParams("CHE", {"A": -al * al / 4, "B": B,
                                    "C": de - B + al,
                                    "D": (1 - be * be) / 4,
                                    "E": (4 * ga - ga * ga - 3) / 4})
    if c.family == "GHE":
        al, be, ga, de, ep = (c["alpha"], c["beta"], c["gamma"],
                              c["delta"], c["epsilon"])
        a, q = c["a"], c["q"]
        A = ((a * de + ep) * ga / 2 - q) / a
        B = (al * al - (ga + de + ep - 1) * al
             + (ga + de) * ep / 2 + ga * de / 2 - a * A) / (a - 1)
        return NormalParams("GHE", {"a": a, "A": A, "B": B,
                                    "D": (2 * ga - ga * ga) / 4,
                                    "E": (2 * de - de * de) / 4,
                                    "F": (2 * ep - ep * ep) / 4})
    raise ParamError(f"unknown family {c.family!r}")


def canonical_to_family(c: CanonicalParams) -> list[Family]:
    """All family instances matching canonical parameters; empty when the
    canonical equation lies outside the solvable family."""
    if c.family == "BHE":
        al = c["alpha"]
        if abs(al * al - 4) > 1e-9 * max(1.0, abs(al) ** 2):
            return []
    return normal_to_family(canonical_to_normal(c))


def family_to_canonical(f: Family) -> list[CanonicalParams]:
    """All canonical parameter sets whose equation reduces to the family
    instance's normal form (every algebraic sign branch is emitted)."""
    if isinstance(f, BHEFamily):
        s, t = f.sigma, f.tau
        return [CanonicalParams("BHE", {"alpha": al, "beta": 2 * s,
                                        "gamma": s * s - t * t, "delta": 2 * t})
                for al in (2.0, -2.0)]
    if isinstance(f, CHEFamily):
        lam, s, t = f.lam, f.sigma, f.tau
        l2 = lam * lam
        beta0 = 2 * lam * cmath.sqrt(1 - 2 * s + t * t)
        out = []
        for al in (2 * lam, -2 * lam):
            for be in (beta0, -beta0):
                for ga in (0.0, 4.0):
                    de = 2 * (1 - s) * l2 - al
                    eta = 2 * (s - 1) * l2 - t * lam - be
                    out.append(CanonicalParams("CHE", {
                        "alpha": al, "beta": be, "gamma": ga,
                        "delta": de, "eta": eta}))
        return out
    if isinstance(f, GHEFamily):
        n = family_to_normal_params(f)
        a, A, B, D, E = n["a"], n["A"], n["B"], n["D"], n["E"]
        out = []
        for ga in (1 + cmath.sqrt(1 - 4 * D), 1 - cmath.sqrt(1 - 4 * D)):
            for de in (1 + cmath.sqrt(1 - 4 * E), 1 - cmath.sqrt(1 - 4 * E)):
                for ep in (3.0, -1.0):
                    lin = ga + de + ep - 1
                    const = (ga + de) * ep / 2 + ga * de / 2 - (a - 1) * B - a * A
                    disc = cmath.sqrt(lin * lin - 4 * const)
                    for al in ((lin + disc) / 2, (lin - disc) / 2):
                        be = ga + de + ep - al - 1
                        qq = (a * de + ep) * ga / 2 - a * A
                        out.append(CanonicalParams("GHE", {
                            "alpha": al, "beta": be, "gamma": ga, "delta": de,
                            "epsilon": ep, "a": a, "q": qq}))
        return out
    raise ParamError(f"unsupported family object {type(f).__name__}")
