"""The noncommutative algebra of q-difference operators.

Operators are finite Laurent polynomials in the dilation symbol ``S`` with
truncated-Laurent-series coefficients, subject to the twist rule
``S^k x = sigma_q^k(x) S^k``.  Degrees may be negative; ``deg_abs`` is the
span between the extreme stored degrees.  Division normalizes both operands
to entire polynomials with a nonzero constant S-term by unit factors
(a unit being a monomial times a power of S), then runs the Euclidean loop
with the divisor treated as monic in its top S-degree.
"""

from __future__ import annotations

import numpy as np

from .context import QContext
from .errors import PrecisionExhausted, ZeroDivisor, ZeroOperator, ZeroSeries
from .series import LaurentSeries


class OreOperator:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: QContext, terms: dict):
        self.ctx = ctx
        self.terms = {int(k): v for k, v in terms.items()
                      if isinstance(v, LaurentSeries) and not v.is_zero}

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, ctx: QContext) -> "OreOperator":
        return cls(ctx, {})

    @classmethod
    def identity(cls, ctx: QContext) -> "OreOperator":
        return cls(ctx, {0: LaurentSeries.one(ctx)})

    @classmethod
    def sigma(cls, ctx: QContext, k: int = 1) -> "OreOperator":
        return cls(ctx, {k: LaurentSeries.one(ctx)})

    @classmethod
    def from_series(cls, s: LaurentSeries) -> "OreOperator":
        return cls(s.ctx, {0: s})

    @classmethod
    def from_scalar_terms(cls, ctx: QContext, d: dict) -> "OreOperator":
        """Build sum_k d[k] * S^k from plain complex scalars."""
        return cls(ctx, {k: LaurentSeries.constant(ctx, c)
                         for k, c in d.items()})

    # ------------------------------------------------------------------
    # queries

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_deg(self) -> int:
        if self.is_zero:
            raise ZeroOperator("zero operator has no degrees")
        return min(self.terms)

    @property
    def max_deg(self) -> int:
        if self.is_zero:
            raise ZeroOperator("zero operator has no degrees")
        return max(self.terms)

    @property
    def deg_abs(self) -> int:
        return self.max_deg - self.min_deg

    @property
    def valuation(self):
        """Minimum coefficient z-valuation (the operator's v0)."""
        if self.is_zero:
            raise ZeroOperator("zero operator has no valuation")
        return min(int(s.v0) for s in self.terms.values())

    def coeff(self, k: int) -> LaurentSeries:
        return self.terms.get(k) or LaurentSeries.zero(self.ctx)

    def degrees(self):
        return sorted(self.terms)

    # ------------------------------------------------------------------
    # ring structure

    def __add__(self, other):
        if not isinstance(other, OreOperator):
            return NotImplemented
        out = dict(self.terms)
        for k, s in other.terms.items():
            out[k] = out[k] + s if k in out else s
        return OreOperator(self.ctx, out)

    def __neg__(self):
        return OreOperator(self.ctx, {k: -s for k, s in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OreOperator):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return OreOperator(self.ctx,
                               {k: s.scale(other) for k, s in self.terms.items()})
        if isinstance(other, LaurentSeries):
            other = OreOperator.from_series(other)
        if not isinstance(other, OreOperator):
            return NotImplemented
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                piece = a * b.dilate(i)  # S^i b = sigma^i(b) S^i
                k = i + j
                out[k] = out[k] + piece if k in out else piece
        return OreOperator(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        if isinstance(other, LaurentSeries):
            return OreOperator.from_series(other) * self
        return NotImplemented

    def scale_series_left(self, s: LaurentSeries) -> "OreOperator":
        """Left multiplication by a plain series (no twist involved)."""
        return OreOperator(self.ctx, {k: s * a for k, a in self.terms.items()})

    # ------------------------------------------------------------------
    # action and division

    def apply(self, f: LaurentSeries) -> LaurentSeries:
        """Apply the operator to a series: sum_i a_i * sigma_q^i(f)."""
        out = LaurentSeries.zero(self.ctx)
        for i, a in self.terms.items():
            out = out + a * f.dilate(i)
        return out

    def shift_normalize(self):
        """Write self = S^m * P with P entire and nonzero constant S-term."""
        if self.is_zero:
            raise ZeroOperator("cannot normalize the zero operator")
        m = self.min_deg
        if m == 0:
            return 0, self
        entire = OreOperator(self.ctx, {k - m: s.dilate(-m)
                                        for k, s in self.terms.items()})
        return m, entire

    def right_divmod(self, other: "OreOperator"):
        """Euclidean division self = Q * other + R, deg_abs(R) < deg_abs(other)."""
        if not isinstance(other, OreOperator):
            raise TypeError("divisor must be an operator")
        if other.is_zero:
            raise ZeroDivisor("division by the zero operator")
        ma, A = self.shift_normalize() if not self.is_zero else (0, self)
        mb, B = other.shift_normalize()
        nb = B.max_deg
        btop = B.terms[nb]
        Q = OreOperator.zero(self.ctx)
        R = A
        op_scale = max((s.max_abs() for s in A.terms.values()), default=0.0)
        while not R.is_zero and R.max_deg >= nb:
            kmax = R.max_deg
            k = kmax - nb
            cancel_scale = R.terms[kmax].max_abs()
            op_scale = max(op_scale, cancel_scale)
            try:
                factor = R.terms[kmax] * btop.dilate(k).inverse()
            except (ZeroSeries, PrecisionExhausted) as exc:
                raise PrecisionExhausted(
                    "coefficient inversion ran out of precision during "
                    "division") from exc
            step = OreOperator(self.ctx, {k: factor})
            Q = Q + step
            R = R - step * B
            if not R.is_zero and R.max_deg == kmax:
                # structural cancellation leaves roundoff residue; flush it
                top = R.terms[kmax]
                if top.max_abs() <= 1e3 * self.ctx.tol_zero * cancel_scale:
                    R = OreOperator(self.ctx, {d: s for d, s in R.terms.items()
                                               if d != kmax})
                else:
                    raise PrecisionExhausted("top-degree cancellation failed")
        # remainder terms at cancellation-residue level are numerical zero
        R = OreOperator(self.ctx,
                        {d: s for d, s in R.terms.items()
                         if s.max_abs() > 1e3 * self.ctx.tol_zero * op_scale})
        # undo the unit normalizations: self = S^ma A, other = S^mb B
        Qfix = (OreOperator.sigma(self.ctx, ma) * Q
                * OreOperator.sigma(self.ctx, -mb))
        Rfix = OreOperator.sigma(self.ctx, ma) * R
        return Qfix, Rfix

    # ------------------------------------------------------------------
    # gauge transforms

    def gauge(self, alpha: LaurentSeries) -> "OreOperator":
        """Conjugate by a solution u of sigma_q u = alpha * u.

        Coefficientwise b_i = a_i * prod_{j=0}^{i-1} sigma_q^j(alpha), with
        inverse products for negative degrees; every slope shifts by
        v0(alpha).
        """
        if alpha.is_zero:
            raise ZeroSeries("gauge by the zero series")
        if self.is_zero:
            return self
        degs = self.degrees()
        prods = {0: LaurentSeries.one(self.ctx)}
        top = max(degs[-1], 0)
        for i in range(1, top + 1):
            prods[i] = prods[i - 1] * alpha.dilate(i - 1)
        bottom = min(degs[0], 0)
        for i in range(-1, bottom - 1, -1):
            prods[i] = prods[i + 1] * alpha.dilate(i).inverse()
        return OreOperator(self.ctx,
                           {k: a * prods[k] for k, a in self.terms.items()})

    # ------------------------------------------------------------------
    # comparisons

    def distance(self, other: "OreOperator") -> float:
        """Max relative coefficient gap against another operator."""
        keys = set(self.terms) | set(other.terms)
        scale = max([s.max_abs() for s in self.terms.values()]
                    + [s.max_abs() for s in other.terms.values()] + [0.0])
        if scale == 0.0:
            return 0.0
        worst = 0.0
        for k in keys:
            worst = max(worst, self.coeff(k).distance(other.coeff(k)))
        return worst / scale

    def approx_eq(self, other: "OreOperator", tol=None) -> bool:
        tol = self.ctx.tol_zero if tol is None else tol
        return self.distance(other) <= tol

    def __repr__(self):
        if self.is_zero:
            return "<Ore 0>"
        bits = [f"[{s!r}]S^{k}" for k, s in sorted(self.terms.items(),
                                                   reverse=True)]
        return "<Ore " + " + ".join(bits) + ">"


def dilation_unit(alpha: LaurentSeries):
    """Decompose a unit alpha = c z^mu beta (beta(0)=1) and build v with
    sigma_q v = beta v, v(0) = 1.

    The symbol u = e_{q,c} * Theta^mu * v then satisfies sigma_q u = alpha u.
    ``v`` is computed by the coefficient recurrence
    v_m (q^m - 1) = sum_{j>=1} beta_j v_{m-j}, which agrees with the
    truncated infinite product prod_{k>=1} beta(q^{-k} z).
    """
    if alpha.is_zero:
        raise ZeroSeries("no unit data for the zero series")
    ctx = alpha.ctx
    mu = int(alpha.v0)
    c = alpha.leading()
    beta = alpha.shift(-mu).scale(1.0 / c)
    width = beta.coeffs.size
    b = beta.coeffs
    v = np.zeros(width, complex)
    v[0] = 1.0
    for m in range(1, width):
        v[m] = np.dot(b[1:m + 1], v[m - 1::-1]) / (ctx.q ** m - 1.0)
    return c, mu, LaurentSeries(ctx, 0, v, beta.known_to)
