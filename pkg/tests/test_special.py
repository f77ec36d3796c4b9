import cmath

import numpy as np
import pytest

from qdiff.context import QContext
from qdiff.errors import NearPole
from qdiff.special import big_theta, big_theta_prime, q_character, q_logarithm, theta


def annulus_points(ctx, rng, n=100):
    """Random points with 1 <= |z| < |q|, kept away from the spirals +-q^Z."""
    pts = []
    while len(pts) < n:
        r = abs(ctx.q) ** rng.uniform(0.05, 0.95)
        ang = rng.uniform(0.15, 2 * np.pi - 0.15)
        z = r * cmath.exp(1j * ang)
        pts.append(z)
    return pts


def pochhammer_inf(x, p, tol=1e-16):
    """(x; p)_infinity by partial products (independent oracle)."""
    out, n = 1.0 + 0j, 0
    while True:
        f = 1 - p ** n * x
        out *= f
        n += 1
        if abs(p ** n * x) < tol or n > 500:
            return out


def test_theta_zeros_on_q_spiral(ctx):
    scale = abs(theta(ctx, 1.7 + 0.3j))
    for m in range(3):
        assert abs(theta(ctx, ctx.q ** m)) < 1e-9 * max(scale, 1.0)


def test_theta_functional_equation(ctx, rng):
    for z in annulus_points(ctx, rng, 25):
        lhs = theta(ctx, ctx.q * z) + ctx.q * z * theta(ctx, z)
        assert abs(lhs) < 1e-9 * max(abs(theta(ctx, z)), 1.0)


def test_theta_triple_product(ctx, rng):
    p = 1.0 / ctx.q
    pp = pochhammer_inf(p, p)
    for z in annulus_points(ctx, rng, 25):
        ref = pp * pochhammer_inf(z, p) * pochhammer_inf(p / z, p)
        t = theta(ctx, z)
        assert abs(t - ref) < 1e-9 * abs(ref)


def test_big_theta_functional_equation(ctx, rng):
    for z in annulus_points(ctx, rng, 25):
        lhs = big_theta(ctx, ctx.q * z) - z * big_theta(ctx, z)
        assert abs(lhs) < 1e-9 * abs(z * big_theta(ctx, z))


def test_big_theta_zeros(ctx):
    scale = abs(big_theta(ctx, 1.3 + 0.4j))
    for m in range(2):
        assert abs(big_theta(ctx, -ctx.q ** m)) < 1e-9 * max(scale, 1.0)


def test_big_theta_is_shifted_theta(ctx, rng):
    for z in annulus_points(ctx, rng, 10):
        assert abs(big_theta(ctx, z) - theta(ctx, -z / ctx.q)) < 1e-10 * abs(big_theta(ctx, z))


def test_q_logarithm_functional_equation(ctx, rng):
    for z in annulus_points(ctx, rng, 25):
        try:
            diff = q_logarithm(ctx, ctx.q * z) - q_logarithm(ctx, z)
        except NearPole:
            continue
        assert abs(diff - 1.0) < 1e-9 * max(abs(q_logarithm(ctx, z)), 1.0)


def test_q_logarithm_pole(ctx):
    with pytest.raises(NearPole):
        q_logarithm(ctx, -1.0 + 1e-9)
    # just outside the exclusion radius the magnitude blows up
    val = q_logarithm(ctx, -1.0 + 5e-3, exclusion_radius=1e-3)
    assert abs(val) > 1e2


def test_big_theta_prime_matches_finite_differences(ctx, rng):
    h = 1e-6
    for z in annulus_points(ctx, rng, 10):
        fd = (big_theta(ctx, z * (1 + h)) - big_theta(ctx, z * (1 - h))) / (2 * h * z)
        an = big_theta_prime(ctx, z)
        assert abs(fd - an) < 1e-5 * abs(an)


def test_q_character_functional_equation(ctx, rng):
    for c in (1.5, 0.7 - 0.2j, ctx.q * 1.01):
        for z in annulus_points(ctx, rng, 15):
            try:
                lhs = q_character(ctx, c, ctx.q * z) - c * q_character(ctx, c, z)
            except NearPole:
                continue
            assert abs(lhs) < 1e-9 * max(abs(c * q_character(ctx, c, z)), 1.0)


def test_q_character_trivial(ctx, rng):
    for z in annulus_points(ctx, rng, 5):
        assert abs(q_character(ctx, 1.0, z) - 1.0) < 1e-12


def test_q_character_at_q_is_z_over_q(ctx, rng):
    # Theta(z) = (z/q) Theta(z/q) by the functional equation
    for z in annulus_points(ctx, rng, 10):
        try:
            val = q_character(ctx, ctx.q, z)
        except NearPole:
            continue
        assert abs(val - z / ctx.q) < 1e-10 * abs(z / ctx.q)


def test_elliptic_constant_is_q_invariant_but_not_one(ctx, rng):
    # e_c * e_d / e_{cd} is sigma_q-invariant; it need NOT equal 1
    c, d = 1.3 + 0.2j, 0.8 - 0.5j
    ratios = []
    for z in annulus_points(ctx, rng, 8):
        try:
            num = q_character(ctx, c, z) * q_character(ctx, d, z)
            den = q_character(ctx, c * d, z)
            r = num / den
            rq = (q_character(ctx, c, ctx.q * z) * q_character(ctx, d, ctx.q * z)
                  / q_character(ctx, c * d, ctx.q * z))
        except NearPole:
            continue
        assert abs(r - rq) < 1e-9 * abs(r)
        ratios.append(r)
    assert len(ratios) >= 4
    # invariant under z -> qz yet genuinely z-dependent (an elliptic function)
    spread = max(abs(a - b) for a in ratios for b in ratios)
    assert spread > 1e-6


@pytest.fixture
def rng():
    return np.random.default_rng(7)
