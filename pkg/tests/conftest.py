import numpy as np
import pytest

from qdiff.context import Mode, QContext
from qdiff.series import LaurentSeries


@pytest.fixture
def ctx():
    return QContext.create(2.0)

@pytest.fixture
def ctx_c():
    return QContext.create(3 + 0.1j)

@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_series(ctx, rng, v0_range=(-2, 2), length=4, allow_zero=False):
    """Random Laurent polynomial viewed as an exact series."""
    if allow_zero and rng.random() < 0.1:
        return LaurentSeries.zero(ctx)
    v0 = int(rng.integers(v0_range[0], v0_range[1] + 1))
    coeffs = rng.standard_normal(length) + 1j * rng.standard_normal(length)
    coeffs[0] += 3.0  # keep the leading coefficient honest
    return LaurentSeries(ctx, v0, coeffs)


def naive_mul(a_dict, b_dict):
    """Dict-based Cauchy product, independent of the series code."""
    out = {}
    for m, c in a_dict.items():
        for n, d in b_dict.items():
            out[m + n] = out.get(m + n, 0j) + c * d
    return out
