"""Newton polygon machinery: slopes, ramification, characteristic equations,
exponents and resonance.

The polygon of a nonzero operator is the lower boundary of the convex hull
of the points (S-degree, coefficient valuation); slopes are exact
``Fraction`` values computed from integer hull data, never floats, and each
segment length is its horizontal extent.  Sign convention: the *last* slope
is the largest one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .context import QContext
from .errors import RootFindingFailure, SlopeMissing, ZeroOperator
from .ore import OreOperator
from .series import LaurentSeries


@dataclass(frozen=True)
class Segment:
    slope: Fraction
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple

    @property
    def slopes(self):
        return [s.slope for s in self.segments]

    @property
    def last_slope(self) -> Fraction:
        return self.segments[-1].slope

    def length(self, mu) -> int:
        """The Newton function r_P evaluated at slope mu."""
        mu = Fraction(mu)
        for s in self.segments:
            if s.slope == mu:
                return s.length
        return 0

    def total_length(self) -> int:
        return sum(s.length for s in self.segments)

    def ramification_level(self) -> int:
        """lcm of the slope denominators (1 when all slopes are integers)."""
        out = 1
        for s in self.segments:
            out = out * s.slope.denominator // math.gcd(
                out, s.slope.denominator)
        return out

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        """Merge of Newton functions (polygon additivity under products)."""
        acc = {}
        for s in list(self.segments) + list(other.segments):
            acc[s.slope] = acc.get(s.slope, 0) + s.length
        return NewtonPolygon(tuple(Segment(m, acc[m]) for m in sorted(acc)))


def newton_polygon(P: OreOperator) -> NewtonPolygon:
    """Lower-hull slopes and lengths of {(i, j) : j >= v0(a_i)}."""
    if P.is_zero:
        raise ZeroOperator("the zero operator has no Newton polygon")
    pts = sorted((k, int(s.v0)) for k, s in P.terms.items())
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep the middle point only on a strict left turn (lower hull)
            if (x2 - x1) * (p[1] - y1) - (p[0] - x1) * (y2 - y1) > 0:
                break
            hull.pop()
        hull.append(p)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        if segs and segs[-1].slope == slope:
            segs[-1] = Segment(slope, segs[-1].length + (x2 - x1))
        else:
            segs.append(Segment(slope, x2 - x1))
    return NewtonPolygon(tuple(segs))


def ramify(P: OreOperator, level: int) -> OreOperator:
    """Move to the variable w with w^level = z; every slope multiplies by level.

    The returned operator lives over the ramified context (q replaced by
    exp(tau/level)); coefficient exponents stretch by the level, with the
    in-between coefficients exactly zero.
    """
    if level == 1:
        return P
    ctx2 = P.ctx.ramify(level)
    terms = {}
    for k, s in P.terms.items():
        if s.is_zero:
            continue
        arr = np.zeros(level * (s.coeffs.size - 1) + 1, complex)
        arr[::level] = s.coeffs
        terms[k] = LaurentSeries(ctx2, level * int(s.v0), arr,
                                 level * s.known_to + level - 1)
    return OreOperator(ctx2, terms)


@dataclass(frozen=True)
class CharPolynomial:
    """Laurent polynomial in s, normalized so the lowest term is 1."""

    min_deg: int
    coeffs: tuple  # complex coefficients from min_deg upward

    @property
    def span(self) -> int:
        return len(self.coeffs) - 1

    def roots(self) -> np.ndarray:
        """Nonzero roots via the companion-matrix eigenproblem."""
        if self.span == 0:
            return np.zeros(0, complex)
        poly = np.asarray(self.coeffs[::-1], complex)  # highest first
        try:
            r = np.roots(poly)
        except np.linalg.LinAlgError as exc:
            raise RootFindingFailure(str(exc)) from exc
        if not np.all(np.isfinite(r)):
            raise RootFindingFailure("companion eigenproblem diverged")
        return r

    def eval(self, s: complex) -> complex:
        out = 0j
        for j, c in enumerate(self.coeffs):
            out += c * s ** (self.min_deg + j)
        return out


def characteristic_polynomial(P: OreOperator, mu: int) -> CharPolynomial:
    """Characteristic equation attached to the integer slope mu.

    Gauge by z^(-mu), divide out the operator valuation, read the constant
    terms.  When mu is not a slope the result is the constant 1.
    """
    if P.is_zero:
        raise ZeroOperator("no characteristic equation for 0")
    ctx = P.ctx
    g = P.gauge(LaurentSeries.monomial(ctx, -int(mu)))
    ell = g.valuation
    vals = {}
    for k, s in g.terms.items():
        vals[k] = s.coeff(ell)
    peak = max(abs(v) for v in vals.values())
    vals = {k: v for k, v in vals.items() if abs(v) > ctx.tol_zero * peak}
    lo, hi = min(vals), max(vals)
    base = vals[lo]
    coeffs = tuple(vals.get(k, 0j) / base for k in range(lo, hi + 1))
    return CharPolynomial(lo, coeffs)


def decompose_character(ctx: QContext, c: complex):
    """Write c = q^eps * cbar with 1 <= |cbar| < |q|; returns (eps, cbar)."""
    if c == 0:
        raise ValueError("cannot decompose 0")
    x = math.log(abs(c)) / math.log(abs(ctx.q))
    eps = math.floor(x + 1e-9)
    cbar = c * ctx.q ** (-eps)
    return eps, cbar


@dataclass(frozen=True)
class ExponentDatum:
    c: complex
    multiplicity: int
    eps: int
    cbar: complex


def slope_exponents(P: OreOperator, mu: int):
    """Exponents attached to slope mu: clustered roots of the characteristic
    equation, each with multiplicity and its q-power decomposition."""
    char = characteristic_polynomial(P, mu)
    if char.span == 0:
        raise SlopeMissing(f"slope {mu} carries no exponents")
    roots = char.roots()
    # multiple roots of the companion eigenproblem split like eps^(1/m);
    # the clustering radius therefore gets a floor above tol_match
    tol = max(P.ctx.tol_match, 1e-5)
    clusters = []
    for r in sorted(roots, key=lambda w: (w.real, w.imag)):
        for cl in clusters:
            if abs(r - cl[0] / cl[1]) <= tol * max(1.0, abs(r)):
                cl[0] += r
                cl[1] += 1
                break
        else:
            clusters.append([r, 1])
    out = []
    for total, mult in clusters:
        c = total / mult
        if mult == 1:
            c = _newton_polish(char, c)
        eps, cbar = decompose_character(P.ctx, c)
        out.append(ExponentDatum(c=c, multiplicity=mult, eps=eps, cbar=cbar))
    out.sort(key=lambda e: (-abs(e.c), e.c.real, e.c.imag))
    assert sum(e.multiplicity for e in out) == char.span
    return out


def _newton_polish(char: CharPolynomial, c: complex) -> complex:
    p = dp = 0j
    for j, a in enumerate(char.coeffs):
        k = char.min_deg + j
        p += a * c ** k
        dp += k * a * c ** (k - 1)
    if dp == 0:
        return c
    step = p / dp
    return c - step if abs(step) < 0.1 * max(abs(c), 1.0) else c


def resonance_shift(ctx: QContext, c: complex, d: complex):
    """Integer l with d = c * q^l (within tol_match), or None.

    The candidate is read off the log-magnitudes, then the full complex
    ratio is checked, so no unbounded scan over l is needed.
    """
    if c == 0 or d == 0:
        return None
    ell = round(math.log(abs(d / c)) / math.log(abs(ctx.q)))
    if abs(d - c * ctx.q ** ell) <= ctx.tol_match * abs(d):
        return ell
    return None


def is_non_resonant(ctx: QContext, c: complex, exponents) -> bool:
    """True iff no exponent equals c*q^l for some l >= 1."""
    for e in exponents:
        ell = resonance_shift(ctx, c, e.c)
        if ell is not None and ell >= 1:
            return False
    return True
