"""Truncated Laurent series over C with explicit precision tracking.

A series stores a dense coefficient window for the exponents
``v0 .. known_to``; coefficients are trusted exactly up to ``known_to`` and
unknown beyond it.  Every operation computes the precision of its output
from the precisions of its inputs instead of silently padding with zeros,
so downstream factorization code can see (and test) its precision loss.

The zero series is a distinguished value: it has no coefficients, its
valuation reads as +infinity, but it still carries a ``known_to`` ("zero at
least through this order").
"""

from __future__ import annotations

import math

import numpy as np

from .context import QContext
from .errors import (NonzeroConstantTerm, PrecisionExhausted,
                     TruncationDominates, ZeroSeries)


class LaurentSeries:
    __slots__ = ("ctx", "_v0", "coeffs", "known_to")

    def __init__(self, ctx: QContext, v0: int, coeffs, known_to=None):
        """Build the series sum_m coeffs[m - v0] z^m.

        Coefficients not listed are taken to be exactly zero up to
        ``known_to`` (default: ``v0 + ctx.trunc_order``), so polynomial
        constructors get a full-precision window for free.  Leading
        coefficients below ``tol_zero`` relative to the largest one are
        flushed to zero when determining the valuation.
        """
        self.ctx = ctx
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if known_to is None:
            known_to = v0 + ctx.trunc_order
        width = known_to - v0 + 1
        if width < 0:
            raise PrecisionExhausted(
                f"series window [{v0}, {known_to}] is empty")
        if arr.size < width:
            arr = np.concatenate([arr, np.zeros(width - arr.size, complex)])
        elif arr.size > width:
            arr = arr[:width]
        # flush negligible leading entries; they would fake a valuation.
        # The scale is local (a short prefix window), not the global peak:
        # legitimate series may grow geometrically across the window, and a
        # small-but-real leading coefficient must survive.
        mags = np.abs(arr)
        lead = 0
        while lead < arr.size:
            local = mags[lead: lead + 8].max()
            if mags[lead] > ctx.tol_zero * local:
                break
            lead += 1
        if lead == arr.size:
            self._v0 = None
            self.coeffs = np.zeros(0, complex)
        else:
            self._v0 = v0 + lead
            self.coeffs = np.ascontiguousarray(arr[lead:])
            cap = self._v0 + ctx.trunc_order
            if known_to > cap:
                known_to = cap
                self.coeffs = self.coeffs[:known_to - self._v0 + 1]
        self.known_to = int(known_to)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, ctx: QContext, known_to=None) -> "LaurentSeries":
        s = cls.__new__(cls)
        s.ctx = ctx
        s._v0 = None
        s.coeffs = np.zeros(0, complex)
        s.known_to = int(ctx.trunc_order if known_to is None else known_to)
        return s

    @classmethod
    def constant(cls, ctx: QContext, value) -> "LaurentSeries":
        return cls(ctx, 0, [complex(value)])

    @classmethod
    def one(cls, ctx: QContext) -> "LaurentSeries":
        return cls.constant(ctx, 1.0)

    @classmethod
    def monomial(cls, ctx: QContext, exponent: int, value=1.0) -> "LaurentSeries":
        return cls(ctx, exponent, [complex(value)])

    @classmethod
    def zvar(cls, ctx: QContext) -> "LaurentSeries":
        return cls.monomial(ctx, 1)

    @classmethod
    def from_dict(cls, ctx: QContext, d: dict, known_to=None) -> "LaurentSeries":
        if not d:
            return cls.zero(ctx, known_to)
        v0 = min(d)
        top = max(d)
        arr = np.zeros(top - v0 + 1, complex)
        for m, c in d.items():
            arr[m - v0] = c
        if known_to is not None and known_to < top:
            raise ValueError("known_to below the last listed exponent")
        return cls(ctx, v0, arr, known_to)

    # ------------------------------------------------------------------
    # basic queries

    @property
    def is_zero(self) -> bool:
        return self._v0 is None

    @property
    def v0(self):
        """Valuation; +infinity for the zero series."""
        return math.inf if self._v0 is None else self._v0

    def coeff(self, m: int) -> complex:
        """Coefficient of z^m; raises PrecisionExhausted past known_to."""
        if m > self.known_to:
            raise PrecisionExhausted(
                f"coefficient of z^{m} unknown (known_to={self.known_to})")
        if self._v0 is None or m < self._v0:
            return 0j
        return complex(self.coeffs[m - self._v0])

    def constant_term(self) -> complex:
        """The projector onto the coefficient of z^0."""
        return self.coeff(0)

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max()) if self.coeffs.size else 0.0

    def leading(self) -> complex:
        if self._v0 is None:
            raise ZeroSeries("zero series has no leading coefficient")
        return complex(self.coeffs[0])

    def exponents(self):
        if self._v0 is None:
            return range(0)
        return range(self._v0, self.known_to + 1)

    def as_dict(self, tol=None) -> dict:
        """Nonzero coefficients as {exponent: value} (tol relative to peak)."""
        if self._v0 is None:
            return {}
        tol = self.ctx.tol_zero if tol is None else tol
        cut = tol * max(self.max_abs(), 1e-300)
        return {self._v0 + i: complex(c) for i, c in enumerate(self.coeffs)
                if abs(c) > cut}

    # ------------------------------------------------------------------
    # arithmetic

    def _check_ctx(self, other: "LaurentSeries"):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ValueError("series from different contexts")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentSeries.constant(self.ctx, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_ctx(other)
        known = min(self.known_to, other.known_to)
        if self.is_zero and other.is_zero:
            return LaurentSeries.zero(self.ctx, known)
        v0 = int(min(self.v0, other.v0))
        if v0 > known:
            return LaurentSeries.zero(self.ctx, known)
        arr = np.zeros(known - v0 + 1, complex)
        for s in (self, other):
            if s._v0 is not None:
                hi = min(s.known_to, known)
                if hi >= s._v0:
                    arr[s._v0 - v0: hi - v0 + 1] += s.coeffs[: hi - s._v0 + 1]
        return LaurentSeries(self.ctx, v0, arr, known)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        out = LaurentSeries.__new__(LaurentSeries)
        out.ctx, out._v0, out.known_to = self.ctx, self._v0, self.known_to
        out.coeffs = -self.coeffs
        return out

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentSeries.constant(self.ctx, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> "LaurentSeries":
        """Multiply by an exact complex scalar (no precision cost)."""
        value = complex(value)
        if self.is_zero or value == 0:
            return LaurentSeries.zero(self.ctx, self.known_to)
        return LaurentSeries(self.ctx, self._v0, self.coeffs * value,
                             self.known_to)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_ctx(other)
        if self.is_zero or other.is_zero:
            ka = self.known_to + (other._v0 if not other.is_zero
                                  else other.known_to)
            kb = other.known_to + (self._v0 if not self.is_zero
                                   else self.known_to)
            return LaurentSeries.zero(self.ctx, min(ka, kb))
        known = min(self.known_to + other._v0, other.known_to + self._v0)
        arr = np.convolve(self.coeffs, other.coeffs)
        # entries below the accumulated roundoff of the convolution carry no
        # information; flush them so structural cancellations are exact
        bound = np.convolve(np.abs(self.coeffs), np.abs(other.coeffs))
        floor = (32 * max(self.coeffs.size, other.coeffs.size)
                 * np.finfo(float).eps) * bound
        arr[np.abs(arr) <= floor] = 0.0
        v0 = self._v0 + other._v0
        return LaurentSeries(self.ctx, v0, arr[: known - v0 + 1], known)

    __rmul__ = __mul__

    def shift(self, m: int) -> "LaurentSeries":
        """Multiply by the exact monomial z^m."""
        if self.is_zero:
            return LaurentSeries.zero(self.ctx, self.known_to + m)
        out = LaurentSeries.__new__(LaurentSeries)
        out.ctx = self.ctx
        out._v0 = self._v0 + m
        out.coeffs = self.coeffs
        out.known_to = self.known_to + m
        return out

    def inverse(self) -> "LaurentSeries":
        """Multiplicative inverse; valuation negates, window width is kept."""
        if self.is_zero:
            raise ZeroSeries("cannot invert the zero series")
        width = self.coeffs.size
        lead = self.coeffs[0]
        t = self.coeffs / lead
        inv = np.zeros(width, complex)
        inv[0] = 1.0
        for m in range(1, width):
            inv[m] = -np.dot(t[1:m + 1], inv[m - 1::-1])
        known = self.known_to - 2 * self._v0
        return LaurentSeries(self.ctx, -self._v0, inv / lead, known)

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(1.0 / complex(other))
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return NotImplemented

    def dilate(self, k: int) -> "LaurentSeries":
        """Apply the dilation sigma_q^k: coefficient of z^m picks up q^{km}."""
        if k == 0 or self.is_zero:
            return self
        exps = np.arange(self._v0, self.known_to + 1)
        fac = np.power(self.ctx.q, k * exps)
        return LaurentSeries(self.ctx, self._v0, self.coeffs * fac,
                             self.known_to)

    def q_sum(self) -> "LaurentSeries":
        """Solve (sigma_q - 1) g = self for a series without constant term.

        Divides the coefficient of z^m by q^m - 1; the result again has no
        constant term.
        """
        if self.known_to >= 0:
            c0 = self.coeff(0)
            if abs(c0) > self.ctx.tol_zero * max(self.max_abs(), 1.0):
                raise NonzeroConstantTerm(
                    f"constant term {c0} is not negligible")
        if self.is_zero:
            return self
        exps = np.arange(self._v0, self.known_to + 1)
        den = np.power(self.ctx.q, exps) - 1.0
        den[exps == 0] = 1.0  # constant slot already ~0; keep it 0
        out = self.coeffs / den
        if 0 >= self._v0 and 0 <= self.known_to:
            out[-self._v0] = 0.0
        return LaurentSeries(self.ctx, self._v0, out, self.known_to)

    def truncate(self, k: int) -> "LaurentSeries":
        """Forget coefficients above exponent k (lowers known_to)."""
        if k >= self.known_to:
            return self
        if self.is_zero or k < self._v0:
            return LaurentSeries.zero(self.ctx, k)
        return LaurentSeries(self.ctx, self._v0,
                             self.coeffs[: k - self._v0 + 1], k)

    # ------------------------------------------------------------------
    # comparison and evaluation

    def distance(self, other: "LaurentSeries") -> float:
        """Max coefficient gap on the common known window."""
        known = min(self.known_to, other.known_to)
        lo_candidates = [v for v in (self._v0, other._v0) if v is not None]
        if not lo_candidates:
            return 0.0
        lo = min(lo_candidates)
        if lo > known:
            return 0.0
        a = np.zeros(known - lo + 1, complex)
        b = np.zeros(known - lo + 1, complex)
        for arr, s in ((a, self), (b, other)):
            if s._v0 is not None and s._v0 <= known:
                arr[s._v0 - lo:] = s.coeffs[: known - s._v0 + 1]
        return float(np.abs(a - b).max())

    def approx_eq(self, other, tol=None) -> bool:
        """Coefficientwise equality, absolute tol scaled by the peak input."""
        if isinstance(other, (int, float, complex)):
            other = LaurentSeries.constant(self.ctx, other)
        tol = self.ctx.tol_zero if tol is None else tol
        scale = max(self.max_abs(), other.max_abs())
        if scale == 0.0:
            return True
        return self.distance(other) <= tol * scale

    def eval_at(self, z: complex, *, tail_tol=None) -> complex:
        """Partial sum at z; optionally reject when the cut tail dominates."""
        if self.is_zero:
            return 0j
        z = complex(z)
        if z == 0:
            if self._v0 < 0:
                raise ZeroDivisionError("pole at z = 0")
            return self.coeff(0) if self._v0 <= 0 <= self.known_to else 0j
        powers = z ** np.arange(self._v0, self.known_to + 1)
        terms = self.coeffs * powers
        total = complex(terms.sum())
        if tail_tol is not None:
            tail = float(np.abs(terms[-3:]).max())
            if tail > tail_tol * (abs(total) + 1.0):
                raise TruncationDominates(
                    f"tail estimate {tail:.3g} at |z|={abs(z):.3g} exceeds "
                    f"tolerance")
        return total

    # ------------------------------------------------------------------

    def __repr__(self):
        if self.is_zero:
            return f"<0 + O(z^{self.known_to + 1})>"
        bits = []
        shown = 0
        for i, c in enumerate(self.coeffs):
            if abs(c) > self.ctx.tol_zero * max(self.max_abs(), 1e-300):
                bits.append(f"({c:.6g})z^{self._v0 + i}")
                shown += 1
                if shown >= 6:
                    bits.append("...")
                    break
        return f"<{' + '.join(bits)} + O(z^{self.known_to + 1})>"

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.approx_eq(other)

    __hash__ = None
