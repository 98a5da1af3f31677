import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spherical_mv import series

coeffs = st.lists(st.floats(-0.5, 0.5), min_size=3, max_size=12).map(lambda v: np.array([1.0] + v))


@given(coeffs)
def test_inverse_times_series_is_one(a):
    prod = series.mul(a, series.inverse(a))
    np.testing.assert_allclose(prod, np.eye(1, len(a))[0], atol=1e-10)


@given(coeffs, st.floats(-2.5, 2.5))
def test_power_routes_agree(a, alpha):
    np.testing.assert_allclose(series.power(a, alpha), series.binomial_power(a, alpha), atol=1e-9, rtol=1e-9)


@given(coeffs)
def test_half_powers_multiply(a):
    h = series.power(a, 0.5)
    np.testing.assert_allclose(series.mul(h, h), a, atol=1e-10)


def test_binomial_series_matches_power():
    n = 12
    lhs = series.binomial_series(-1.5, n, step=2)
    base = np.zeros(n)
    base[0], base[2] = 1.0, -1.0
    np.testing.assert_allclose(lhs, series.power(base, -1.5), atol=1e-13)


def test_inverse_rejects_zero_constant():
    with pytest.raises(ZeroDivisionError):
        series.inverse([0.0, 1.0])


def test_power_requires_normalized():
    with pytest.raises(ValueError):
        series.power([2.0, 1.0], 0.5)
