import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cx
from spherical_mv import acceptance, oracle, rankone
from spherical_mv.errors import DomainError, RangeError
from spherical_mv.rootdata import NAMED_SPACES, space_from_name
from spherical_mv.specfun import double_factorial

finite = dict(allow_nan=False, allow_infinity=False)


# ------------------------------------------------------------- recurrence


def test_base_cases():
    assert rankone.calI_recurrence(0, 1.0, 3.0) == pytest.approx(2 * math.sin(3) / 3, rel=1e-14)
    expected = -2 * math.sinh(1) * math.cos(2) / 5 + 2 * math.cosh(1) * math.sin(2) / (2 * 5)
    assert rankone.calI_recurrence(1, 1.0, 2.0) == pytest.approx(expected, rel=1e-14)


def test_against_mpmath(derived):
    for rec in derived["calI"]:
        ref = cx(rec["value"])
        got = rankone.calI_recurrence(rec["m"], rec["t"], cx(rec["zeta"]))
        assert abs(got - ref) <= 1e-8 * abs(ref)


def test_m4_example_matches_oracle():
    ref = oracle.integral_calI(4, 0.8, 7.3)
    assert abs(rankone.calI_recurrence(4, 0.8, 7.3) - ref) <= 1e-8 * abs(ref)


def _printed_sign_recurrence(m, t, z):
    """The recurrence with the opposite signs; kept to show it is wrong."""
    ch, sh = math.cosh(t), math.sinh(t)
    prev2 = 2 * math.sin(z * t) / z
    prev1 = -2 * sh * math.cos(z * t) / (z * z + 1) + 2 * ch * math.sin(z * t) / (z * (z * z + 1))
    for k in range(2, m + 1):
        cur = (-k * (2 * k - 1) * ch * prev1 + k * (k - 1) * sh * sh * prev2) / (z * z + k * k)
        prev2, prev1 = prev1, cur
    return prev1


def test_sign_convention_audit():
    ref = oracle.integral_calI(2, 1.0, 2.5)
    assert abs(rankone.calI_recurrence(2, 1.0, 2.5) - ref) < 1e-12
    assert abs(_printed_sign_recurrence(2, 1.0, 2.5) - ref) > 1e-2


def test_resonance_delegates_to_oracle():
    # zeta^2 + 4 = 0 at zeta = 2i
    got = rankone.calI_recurrence(3, 1.0, 2j)
    assert got == pytest.approx(oracle.integral_calI(3, 1.0, 2j), abs=1e-13)


def test_cancellation_guard():
    ref = oracle.integral_calI(12, 0.2, 3.0)
    guarded = rankone.calI_recurrence(12, 0.2, 3.0)
    raw = rankone.calI_recurrence(12, 0.2, 3.0, guard=False)
    assert abs(guarded - ref) <= 1e-8 * abs(ref)
    assert abs(raw - ref) > 1.0 * abs(ref)  # forward recursion is useless here


def test_recurrence_range():
    with pytest.raises(RangeError):
        rankone.calI_recurrence(13, 1.0, 1.0)
    with pytest.raises(DomainError):
        rankone.calI_recurrence(2, 0.0, 1.0)


@given(st.integers(0, 12), st.floats(0.1, 5.0), st.floats(0.05, 60, **finite), st.floats(-2, 2, **finite))
def test_recurrence_route_agreement(m, t, x, y):
    z = complex(x, y)
    ref = oracle.integral_calI(m, t, z)
    assert abs(rankone.calI_recurrence(m, t, z) - ref) / (1 + abs(ref)) < 1e-7


@given(st.integers(0, 12), st.floats(0.1, 5.0), st.floats(0.05, 60, **finite), st.floats(-2, 2, **finite))
def test_recurrence_even(m, t, x, y):
    z = complex(x, y)
    a, b = rankone.calI_recurrence(m, t, z), rankone.calI_recurrence(m, t, -z)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@given(st.integers(0, 12), st.floats(0.1, 5.0), st.floats(0.05, 60, **finite))
def test_recurrence_real_on_real_axis(m, t, x):
    v = rankone.calI_recurrence(m, t, x)
    assert abs(v.imag) <= 1e-10 * max(abs(v), 1e-300)


# ------------------------------------------------------------- I_odd


def test_I_odd_examples():
    h3, h5 = space_from_name("H3"), space_from_name("H5")
    z = np.array([0.3, 2.0, 17.0])
    np.testing.assert_allclose(rankone.I_odd(h3, 1.0, z), np.sin(z) / z, rtol=1e-14)
    assert rankone.I_odd(h5, 1.0, 0.0) == pytest.approx(math.cosh(1) - math.sinh(1), rel=1e-12)
    ref = oracle.integral_I(h5, 1.0, 10.0)
    assert abs(rankone.I_odd(h5, 1.0, 10.0) - ref) <= 1e-8 * abs(ref)
    with pytest.raises(DomainError):
        rankone.I_odd(space_from_name("H2"), 1.0, 1.0)


# ------------------------------------------------------------- Bessel series


def test_bessel_series_coefficients():
    data = rankone.build_bessel_series(space_from_name("H2"), 1.0, 6)
    assert data.a[0] == pytest.approx(math.sinh(1) / 2, rel=1e-15)
    assert data.a[0] == pytest.approx(0.587600, abs=1e-6)
    assert all(b[0] == 1.0 for b in data.b.values())
    assert data.d[0] == pytest.approx(0.5 * math.pi * data.a[0] ** -0.5, rel=1e-14)


@pytest.mark.parametrize("name", ["H2", "H4", "CH2", "HH2", "OH2"])
@pytest.mark.parametrize("t", [0.3, 1.0, 2.5])
def test_d0_closed_form(name, t):
    sp = space_from_name(name)
    data = rankone.build_bessel_series(sp, t, 4)
    assert data.a[0] > 0
    expected = 0.5 * math.pi * double_factorial(2 * sp.ell - 1) * data.a[0] ** (sp.ell - 0.5)
    assert data.d[0] == pytest.approx(expected, rel=1e-13)


def test_a_coefficients_are_taylor_coefficients():
    # (cosh t - cosh sqrt(t^2 - z)) / z expanded in z
    t, z = 1.2, 1e-2
    a = rankone.taylor_a(t, 8)
    lhs = (math.cosh(t) - math.cosh(math.sqrt(t * t - z))) / z
    assert a @ z ** np.arange(8) == pytest.approx(lhs, rel=1e-12)


def test_series_rejections():
    with pytest.raises(DomainError):
        rankone.build_bessel_series(space_from_name("H3"), 1.0, 4)
    with pytest.raises(RangeError):
        rankone.build_bessel_series(space_from_name("H2"), 1.0, 13)


def test_even_series_example():
    data = rankone.build_bessel_series(space_from_name("H2"), 1.0, 6)
    val, order = rankone.I_even_series(data, 40.0)
    assert order == 6
    assert abs(val - oracle.integral_I(data.space, 1.0, 40.0)) <= 1e-6
    small, _ = rankone.I_even_series(data, 0.5)
    assert small == pytest.approx(oracle.integral_I(data.space, 1.0, 0.5), abs=1e-14)


def test_even_series_against_mpmath(derived):
    for rec in derived["integral_I"]:
        sp = space_from_name(rec["space"])
        z = cx(rec["zeta"])
        if sp.is_odd or abs(z) < 20:
            continue
        val, _ = rankone.I_even_series(rankone.build_bessel_series(sp, rec["t"], 10), z)
        assert abs(val - cx(rec["value"])) <= 1e-12


@pytest.mark.parametrize("N", [2, 3])
def test_remainder_slope_n4(N):
    sp = space_from_name("H4")
    lam = np.linspace(20, 200, 91)
    series = rankone._series_terms(rankone.build_bessel_series(sp, 1.0, N), lam.astype(complex)).sum(axis=1)
    err = np.abs(series - oracle.integral_I(sp, 1.0, lam))
    assert acceptance.envelope_slope(lam, err) <= -N + 0.5


@pytest.mark.parametrize("name", ["H2", "CH2"])
def test_leading_term_decay(name):
    sp = space_from_name(name)
    lam, tail, _, _ = acceptance.remainder_profile(name, 1)
    scaled = tail * lam ** (sp.ell + 1.5)
    assert scaled[lam >= 100].max() <= 1.05 * scaled[lam <= 60].max()


# ------------------------------------------------------------- assembly


def test_h3_phi_examples():
    h3 = space_from_name("H3")
    assert rankone.koornwinder_phi(h3, 1.0, 2.0) == pytest.approx(math.sin(2) / (2 * math.sinh(1)), rel=1e-13)
    assert rankone.koornwinder_phi(h3, 1.0, -1j) == pytest.approx(1.0, abs=1e-13)


def test_prefactor_h3_is_inverse_sinh():
    assert rankone.koornwinder_prefactor(space_from_name("H3"), 0.7) == pytest.approx(1 / math.sinh(0.7), rel=1e-14)


def test_phi_against_jacobi_closed_form(derived):
    for rec in derived["phi"]:
        sp = space_from_name(rec["space"])
        got = rankone.koornwinder_phi(sp, rec["t"], cx(rec["lam"]))
        assert abs(got - cx(rec["value"])) <= 1e-10


@pytest.mark.parametrize("name", list(NAMED_SPACES))
def test_phi_at_minus_i_rho(name):
    sp = space_from_name(name)
    for t in (0.5, 1.0, 3.0):
        assert abs(rankone.koornwinder_phi(sp, t, -1j * sp.rho) - 1) <= 1e-9


@pytest.mark.parametrize("name", ["H2", "H3", "H4", "H5", "CH2"])
@given(t=st.floats(0.2, 3.0), x=st.floats(-80, 80, **finite), y=st.floats(-3, 3, **finite))
def test_phi_even_all_routes(name, t, x, y):
    sp = space_from_name(name)
    z = complex(x, y)
    for route in ("auto", "oracle"):
        a = rankone.koornwinder_phi(sp, t, z, route=route)
        b = rankone.koornwinder_phi(sp, t, -z, route=route)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


@pytest.mark.parametrize("name", ["H2", "H3", "H4", "H5", "CH2"])
@given(t=st.floats(0.2, 3.0), x=st.floats(0, 150, **finite))
def test_phi_real_for_real_lambda(name, t, x):
    sp = space_from_name(name)
    for route in ("auto", "oracle"):
        v = rankone.koornwinder_phi(sp, t, x, route=route)
        assert abs(v.imag) <= 1e-10 * max(abs(v), 1e-12)


@pytest.mark.parametrize("name", ["H2", "H4", "CH2"])
@given(t=st.floats(0.3, 3.0), x=st.floats(20, 200, **finite))
def test_even_route_agreement(name, t, x):
    sp = space_from_name(name)
    fast, _, _ = rankone.koornwinder_I(sp, t, x, route="series", N=6)
    ref = oracle.integral_I(sp, t, x)
    assert abs(fast[0] - ref) / (1 + abs(ref)) < 1e-7


def test_route_labels_and_errors():
    h2 = space_from_name("H2")
    _, labels, _ = rankone.koornwinder_I(h2, 1.0, np.array([0.5, 50.0]))
    assert list(labels) == ["oracle", "series"]
    with pytest.raises(DomainError):
        rankone.koornwinder_I(h2, 1.0, 1.0, route="recurrence")
    with pytest.raises(DomainError):
        rankone.koornwinder_I(space_from_name("H3"), 1.0, 1.0, route="series")
    with pytest.raises(DomainError):
        rankone.koornwinder_phi(h2, 0.0, 1.0)


def test_with_info_scalar():
    val, label, err = rankone.koornwinder_phi(space_from_name("CH2"), 1.0, 30.0, with_info=True)
    assert isinstance(val, complex) and label == "series" and err >= 0
