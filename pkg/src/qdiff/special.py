"""Numeric evaluation of the uniform special functions on C*.

These realize the building blocks of closed-form solutions pointwise:
the Jacobi theta series, its normalized variant Theta with
Theta(qz) = z * Theta(z), the q-logarithm z*Theta'/Theta (sigma_q adds 1),
and q-characters Theta(z)/Theta(z/c) (eigenfunctions of sigma_q).

Terms decay like |q|^(-n^2/2), so the symmetric partial sums converge
superexponentially away from |q| = 1.
"""

from __future__ import annotations

import math

from .context import QContext
from .errors import NearPole, NonconvergedSum

_HARD_CAP = 200


def _sum_bilateral(ctx: QContext, term, z: complex) -> complex:
    """Adaptively sum term(n) for n in Z, symmetric in n."""
    if z == 0:
        raise ZeroDivisionError("special functions live on C*")
    total = term(0)
    quiet = 0
    for n in range(1, _HARD_CAP + 1):
        tp, tm = term(n), term(-n)
        total += tp + tm
        if max(abs(tp), abs(tm)) <= ctx.tol_zero * (abs(total) + 1e-300):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise NonconvergedSum(
        f"theta-type sum did not settle within {_HARD_CAP} terms; "
        f"|q| = {abs(ctx.q):.4g} may be too close to 1 for tol_zero")


def theta(ctx: QContext, z: complex) -> complex:
    """Jacobi theta: sum of (-1)^n q^(-n(n-1)/2) z^n; zeros on q^Z."""
    q, z = ctx.q, complex(z)
    return _sum_bilateral(ctx, lambda n: (-1) ** n * q ** (-n * (n - 1) // 2) * z ** n, z)


def big_theta(ctx: QContext, z: complex) -> complex:
    """Normalized theta: sum of q^(-n(n+1)/2) z^n, so Theta(qz) = z Theta(z)."""
    q, z = ctx.q, complex(z)
    return _sum_bilateral(ctx, lambda n: q ** (-n * (n + 1) // 2) * z ** n, z)


def big_theta_prime(ctx: QContext, z: complex) -> complex:
    """Termwise derivative of big_theta."""
    q, z = ctx.q, complex(z)
    return _sum_bilateral(ctx, lambda n: n * q ** (-n * (n + 1) // 2) * z ** (n - 1), z)


def _near_spiral(ctx: QContext, z: complex, center: complex, radius: float) -> bool:
    """Is z within radius of the discrete logarithmic spiral -center*q^Z?"""
    if center == 0:
        return False
    w = -z / center
    m0 = math.log(abs(w)) / math.log(abs(ctx.q))
    for m in range(math.floor(m0) - 1, math.floor(m0) + 3):
        if abs(z + center * ctx.q ** m) <= radius:
            return True
    return False


def q_logarithm(ctx: QContext, z: complex, *, exclusion_radius=None) -> complex:
    """The q-logarithm z*Theta'(z)/Theta(z); satisfies sigma_q l = l + 1.

    Simple poles sit on the spiral -q^Z; points within the exclusion radius
    (default 1e-3 |z|) are rejected to keep the denominator conditioned.
    """
    z = complex(z)
    radius = 1e-3 * abs(z) if exclusion_radius is None else exclusion_radius
    if _near_spiral(ctx, z, 1.0, radius):
        raise NearPole(f"z = {z} is within {radius:.3g} of the pole spiral -q^Z")
    return z * big_theta_prime(ctx, z) / big_theta(ctx, z)


def q_character(ctx: QContext, c: complex, z: complex, *,
                exclusion_radius=None) -> complex:
    """The q-character Theta(z)/Theta(z/c); satisfies sigma_q f = c f.

    Zeros on -q^Z, poles on -c q^Z; both spirals are excluded.
    """
    c, z = complex(c), complex(z)
    if c == 0:
        raise ZeroDivisionError("q-character parameter must be nonzero")
    radius = 1e-3 * abs(z) if exclusion_radius is None else exclusion_radius
    if _near_spiral(ctx, z, c, radius):
        raise NearPole(f"z = {z} is within {radius:.3g} of the pole spiral -c q^Z")
    return big_theta(ctx, z) / big_theta(ctx, z / c)
