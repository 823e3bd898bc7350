"""Shared helpers for the test suite: seeded rngs, family-parameter draw
functions with documented conditioning filters, per-family evaluation-point
palettes, and a finite-difference derivative helper.

Draw distributions follow the acceptance contract: family parameters uniform
in [-2, 2], GHE third singular point a in [1.5, 3], general-branch draws keep
|sigma^2 - tau^2| > 0.1. On top of that, draws are conditioned away from the
documented degenerate loci where the constructors refuse to build a basis
(integer-resonant special-function parameters); each filter is stated where
it is applied.
"""
from __future__ import annotations

import random

from heun_air import BHEFamily, CHEFamily, GHEFamily, che_whittaker_params, ghe_exponents

SEED = 20260814

#: Margin kept between drawn resonance-prone quantities and the integer (or
#: half-integer) sets where the closed forms are documented to degenerate.
RESONANCE_MARGIN = 0.05

#: Redraw cap; hitting it means a filter is wrong, not that luck ran out.
MAX_REDRAWS = 500


def rng(tag: str) -> random.Random:
    """Deterministic per-test generator: same tag, same stream."""
    return random.Random(f"{SEED}:{tag}")


def _dist_to_integers(w: complex) -> float:
    """Distance from w to the nearest integer on the real axis (complex
    values far off the axis can't be integer-resonant)."""
    w = complex(w)
    return max(abs(w.imag), abs(w.real - round(w.real)))


def _dist_to_nonpositive_integers(w: complex) -> float:
    w = complex(w)
    if w.real > 0.5:
        return abs(w - 1.0)  # nearest nonpositive integer is >= 1 away; any
        # positive stand-in > margin works, 1.0 keeps the scale honest
    return max(abs(w.imag), abs(w.real - round(w.real)))


def draw_bhe(r: random.Random, liouvillian: bool | None = False) -> BHEFamily:
    """BHE draw. General branch keeps |sigma^2 - tau^2| > 0.1; the
    Liouvillian branch sets tau = +-sigma exactly (sign per `liouvillian`
    True=plus / "minus")."""
    for _ in range(MAX_REDRAWS):
        sigma = r.uniform(-2, 2)
        if liouvillian:
            tau = sigma if liouvillian is True else -sigma
            return BHEFamily(sigma, tau)
        tau = r.uniform(-2, 2)
        if abs(sigma * sigma - tau * tau) > 0.1:
            return BHEFamily(sigma, tau)
    raise AssertionError("BHE draw filter failed to admit a sample")


def draw_che(r: random.Random, liouvillian: bool | None = False) -> CHEFamily:
    """CHE draw with conditioning filters:

    * |lambda| >= 0.1 — lambda = 0 is outside the family and tiny lambda
      makes the equation nearly degenerate;
    * general branch: |sigma^2 - tau^2| > 0.1 and the Whittaker second index
      nu kept off half-integers (2 nu away from integers by 0.05) because
      the W member's connection formula degenerates at integer 1 + 2 nu;
    * Liouvillian branch (tau = +-sigma): the incomplete-gamma order
      u = 2 (tau -+ 1) lambda and u + 1 kept 0.05 away from nonpositive
      integers, where the gamma-integral members are undefined.
    """
    for _ in range(MAX_REDRAWS):
        lam = r.uniform(-2, 2)
        if abs(lam) < 0.1:
            continue
        sigma = r.uniform(-2, 2)
        if liouvillian:
            tau = sigma if liouvillian is True else -sigma
            u = 2 * (tau - 1) * lam if liouvillian is True else 2 * (tau + 1) * lam
            if (_dist_to_nonpositive_integers(u) < RESONANCE_MARGIN
                    or _dist_to_nonpositive_integers(u + 1) < RESONANCE_MARGIN):
                continue
            return CHEFamily(lam, sigma, tau)
        tau = r.uniform(-2, 2)
        if abs(sigma * sigma - tau * tau) <= 0.1:
            continue
        f = CHEFamily(lam, sigma, tau)
        _, nu = che_whittaker_params(f)
        if _dist_to_integers(2 * nu) < RESONANCE_MARGIN:
            continue
        return f
    raise AssertionError("CHE draw filter failed to admit a sample")


def draw_ghe(r: random.Random, liouvillian: bool | None = False,
             a: float | None = None, exponent_cap: float | None = None) -> GHEFamily:
    """GHE draw with conditioning filters:

    * a uniform in [1.5, 3] unless pinned by the caller;
    * |delta| >= 0.1 — delta = 0 is outside the family;
    * general branch: |sigma^2 - tau^2| > 0.1 and the Gauss lower parameters
      1 +- 2T, 2 +- 2T kept 0.05 away from nonpositive integers (the
      constructor refuses closer than 1e-9; the margin keeps draws
      well-conditioned);
    * Liouvillian branch: the incomplete-beta orders alpha, alpha - 1 kept
      0.05 away from nonpositive integers;
    * exponent_cap, when given, bounds |Re T| and |Re Sigma| — used by the
      Runge-Kutta cross-validation draws, where x^(1/2 - T) prefactors with
      large exponents make the comparison ill-conditioned near x = 0.
    """
    for _ in range(MAX_REDRAWS):
        av = r.uniform(1.5, 3) if a is None else a
        delta = r.uniform(-2, 2)
        if abs(delta) < 0.1:
            continue
        sigma = r.uniform(-2, 2)
        if liouvillian:
            tau = sigma if liouvillian is True else -sigma
            if liouvillian is True:
                alpha = 1 + 2 * (av * delta - tau)
            else:
                alpha = 1 - 2 * (av * delta + tau)
            if (_dist_to_nonpositive_integers(alpha) < RESONANCE_MARGIN
                    or _dist_to_nonpositive_integers(alpha - 1) < RESONANCE_MARGIN):
                continue
            return GHEFamily(av, delta, sigma, tau)
        tau = r.uniform(-2, 2)
        if abs(sigma * sigma - tau * tau) <= 0.1:
            continue
        f = GHEFamily(av, delta, sigma, tau)
        big_sigma, big_t = ghe_exponents(f)
        bad = False
        for c in (1 - 2 * big_t, 2 - 2 * big_t, 1 + 2 * big_t, 2 + 2 * big_t):
            if _dist_to_nonpositive_integers(c) < RESONANCE_MARGIN:
                bad = True
        if bad:
            continue
        if exponent_cap is not None and (abs(big_t.real) > exponent_cap
                                         or abs(big_sigma.real) > exponent_cap):
            continue
        return f
    raise AssertionError("GHE draw filter failed to admit a sample")


def draw_family(kind: str, r: random.Random, **kw):
    return {"BHE": draw_bhe, "CHE": draw_che, "GHE": draw_ghe}[kind](r, **kw)


# ---------------------------------------------------------------------------
# evaluation-point palettes
# ---------------------------------------------------------------------------

def bhe_points(f: BHEFamily, n: int = 10) -> list[float]:
    """n points in (0.3, ~3) keeping distance >= 0.12 from the general
    branch's refused point x = -sigma."""
    avoid = -complex(f.sigma)
    pts, x = [], 0.33
    while len(pts) < n:
        if abs(x - avoid) > 0.12:
            pts.append(x)
        x += 0.27
    return pts


def che_points(f: CHEFamily, n: int = 10) -> list[float]:
    """n points in (0.25, ~3) keeping distance >= 0.1 from the singular
    point x = 1."""
    pts, x = [], 0.27
    while len(pts) < n:
        if abs(x - 1.0) > 0.1:
            pts.append(x)
        x += 0.28
    return pts


def ghe_points(f: GHEFamily, n: int = 10) -> list[float]:
    """n points across (0, 1) with margin 0.08 from both endpoints (a lies
    outside [1.5, 3] never inside the interval)."""
    return [0.08 + (0.84 * i) / (n - 1) for i in range(n)]


def family_points(f, n: int = 10) -> list[float]:
    return {"BHE": bhe_points, "CHE": che_points, "GHE": ghe_points}[f.kind](f, n)


# ---------------------------------------------------------------------------
# finite differences (test-side, independent of the library's verifier)
# ---------------------------------------------------------------------------

def fd_derivative(fn, x: complex, h: float | None = None) -> complex:
    """4th-order central finite difference of a scalar function."""
    x = complex(x)
    if h is None:
        h = 1e-4 * max(1.0, abs(x))
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h)


def rel_err(got: complex, want: complex, floor: float = 1.0) -> float:
    return abs(complex(got) - complex(want)) / max(floor, abs(complex(want)))
