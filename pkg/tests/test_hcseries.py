import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cx
from spherical_mv import hcseries, rankone
from spherical_mv.errors import DomainError, PoleError, RangeError, ResonanceError, SearchExhausted
from spherical_mv.rootdata import NAMED_SPACES, space_from_name

H3 = space_from_name("H3")
finite = dict(allow_nan=False, allow_infinity=False)


# ------------------------------------------------------------- radial density


def test_h3_density():
    dens = hcseries.radial_density(H3, 8)
    np.testing.assert_array_equal(dens.b, [1, 0, -1, 0, 0, 0, 0, 0, 0])


@pytest.mark.parametrize("name", list(NAMED_SPACES))
def test_density_invariants(name):
    sp = space_from_name(name)
    dens = hcseries.radial_density(sp, 40)
    assert dens.d[0] == pytest.approx(sp.rho**2, rel=1e-14)
    prod = np.convolve(dens.b, dens.c)[:41]
    np.testing.assert_allclose(prod, np.eye(41)[0], atol=1e-10)


def test_density_range():
    with pytest.raises(RangeError):
        hcseries.radial_density(H3, 201)


# ------------------------------------------------------------- Gamma


@pytest.mark.parametrize("name", list(NAMED_SPACES))
def test_gamma_zero_is_one(name):
    data = hcseries.gamma_coeffs(space_from_name(name), 1.3 - 0.2j, K=30)
    assert data.gamma[0] == 1
    assert data.cross_residual <= hcseries.CROSS_TOL


@pytest.mark.parametrize("lam", [0.7, 3.0 + 0.4j, 25.0])
def test_h3_gamma_geometric(lam):
    g = hcseries.gamma_coeffs(H3, lam, K=20).gamma
    np.testing.assert_allclose(g[::2], 1.0, atol=1e-12)
    np.testing.assert_allclose(g[1::2], 0.0, atol=1e-12)


def test_gamma_lower_index_reading_audit():
    lam = np.array([1.5 + 0j])
    other = hcseries._gamma_table(H3, lam, 10, kmin=2)[:, 0]
    assert np.max(np.abs(other[::2] - 1)) > 1e-2


@pytest.mark.parametrize("name", ["H2", "H4", "CH2", "HH2"])
@given(x=st.floats(-30, 30, **finite), y=st.floats(-2, 2, **finite))
def test_cross_identity(name, x, y):
    lam = complex(x, y)
    k = np.arange(1, 61)
    if np.min(np.abs(k * k - 2j * k * lam)) < 1e-3:
        return
    data = hcseries.gamma_coeffs(space_from_name(name), lam, K=60)
    assert data.cross_residual <= 1e-10


def test_resonance_names_k():
    # k^2 - 2 i k lam = 0 at lam = -i k / 2
    with pytest.raises(ResonanceError) as exc:
        hcseries.gamma_coeffs(H3, -1.5j, K=10)
    assert exc.value.k == 3


@pytest.mark.parametrize("name", ["H2", "H3", "CH2"])
def test_gamma_envelope(name):
    sp = space_from_name(name)
    K_H0, verified = hcseries.gamma_envelope(sp, 0.1, 0.5)
    assert verified and K_H0 >= 1


# ------------------------------------------------------------- c-function


def test_c_against_mpmath(derived):
    for rec in derived["c_function"]:
        got = hcseries.c_function(space_from_name(rec["space"]), cx(rec["lam"]))
        ref = cx(rec["value"])
        assert abs(got - ref) <= 1e-11 * abs(ref)


@pytest.mark.parametrize("name", list(NAMED_SPACES))
def test_c_normalized(name):
    sp = space_from_name(name)
    assert hcseries.c_function(sp, -1j * sp.rho) == pytest.approx(1.0, rel=1e-12)


def test_c_pole_names_factor():
    with pytest.raises(PoleError) as exc:
        hcseries.c_function(H3, 2j)  # i lam = -2
    assert "Gamma" in exc.value.factor


@pytest.mark.parametrize("name", ["H2", "H3", "H4", "CH2", "OH2"])
def test_c_asymptotic_band(name):
    sp = space_from_name(name)
    xi = np.logspace(0, 3, 400)
    r = np.abs(hcseries.c_function(sp, xi - 0.1j)) * (1 + xi) ** ((sp.p + sp.q) / 2)
    assert r.min() > 0 and r.max() / r.min() < 50


# ------------------------------------------------------------- phi_hc


def test_phi_hc_examples():
    assert hcseries.phi_hc(H3, 1.0, 1.5) == pytest.approx(math.sin(1.5) / (1.5 * math.sinh(1)), abs=1e-8)
    h2 = space_from_name("H2")
    assert abs(hcseries.phi_hc(h2, 1.0, 2.0) - rankone.koornwinder_phi(h2, 1.0, 2.0)) <= 1e-6


def test_phi_hc_jacobi(derived):
    for rec in derived["phi"]:
        if rec["t"] < 1:
            continue
        got = hcseries.phi_hc(space_from_name(rec["space"]), rec["t"], cx(rec["lam"]))
        assert abs(got - cx(rec["value"])) <= 1e-8


def test_phi_hc_near_lattice_point():
    # lam = -i/2 sits on the singular set of the pieces; phi is entire there
    h2 = space_from_name("H2")
    got = hcseries.phi_hc(h2, 1.5, -0.5j)
    assert abs(got - rankone.koornwinder_phi(h2, 1.5, -0.5j, route="oracle")) <= 1e-8
    assert hcseries.phi_hc(h2, 1.5, -1j * h2.rho) == pytest.approx(1.0, abs=1e-9)


def test_phi_hc_domain():
    with pytest.raises(DomainError):
        hcseries.phi_hc(H3, 0.4, 1.0)
    with pytest.raises(RangeError):
        hcseries.phi_hc(H3, 1.0, 1.0, K=0)


@pytest.mark.parametrize("name", ["H2", "H3", "H4", "CH2"])
@given(t=st.floats(1.0, 4.0), x=st.floats(-40, 40, **finite), y=st.floats(-1.5, 1.5, **finite))
def test_phi_hc_invariance_and_agreement(name, t, x, y):
    sp = space_from_name(name)
    lam = complex(x, y)
    a, b = hcseries.phi_hc(sp, t, lam), hcseries.phi_hc(sp, t, -lam)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))
    assert abs(a - rankone.koornwinder_phi(sp, t, lam)) <= 1e-6 * max(1.0, abs(a))


def test_small_t_truncation_is_flagged():
    oh2 = space_from_name("OH2")
    ref = rankone.koornwinder_phi(oh2, 0.5, 0.7, route="oracle")
    val, err = hcseries.phi_hc(oh2, 0.5, 0.7, with_info=True)
    assert err >= abs(val - ref)
    assert abs(hcseries.phi_hc(oh2, 0.5, 0.7, K=120) - ref) <= 1e-6


# ------------------------------------------------------------- eta and M


def test_eta_conditions():
    assert hcseries.eta_conditions(H3, 0.1).ok
    assert hcseries.eta_conditions(H3, 0.0).failed() == ["a"]
    assert hcseries.eta_conditions(H3, 0.3).failed() == ["b"]


@given(st.floats(0.001, 0.249))
def test_eta_admissible_band(eta):
    for name in NAMED_SPACES:
        assert hcseries.eta_conditions(space_from_name(name), eta).ok


@pytest.fixture(scope="module")
def h3_search():
    return hcseries.find_M(H3, 0.1, 0.5)


def test_find_M_curve(h3_search):
    res = h3_search
    assert np.all(np.diff(res.C_M) >= -1e-15)
    assert res.C_M[-1] == pytest.approx(res.m1, rel=1e-6)
    assert res.C_star > 0 and res.K_verified
    assert np.all(res.C_M[res.M_grid < res.M_star] <= 0)


def test_lower_bound_end_to_end(h3_search):
    res = h3_search
    xi = np.linspace(0, 200, 401)
    ok = hcseries.lower_bound_check(H3, 0.1, res.M_star + 1, xi, res.C_star, M_star=res.M_star)
    assert ok.passed and np.all(ok.lhs >= 0)
    bad = hcseries.lower_bound_check(H3, 0.1, res.M_star + 1, xi, 100 * res.C_star)
    assert not bad.passed
    xi_w, lhs, rhs = bad.worst
    assert lhs < rhs


def test_lower_bound_requires_large_H(h3_search):
    with pytest.raises(DomainError):
        hcseries.lower_bound_check(H3, 0.1, h3_search.M_star, [0.0], 1.0, M_star=h3_search.M_star)


def test_find_M_errors():
    with pytest.raises(DomainError):
        hcseries.find_M(H3, 0.3, 0.5)
    with pytest.raises(DomainError):
        hcseries.find_M(H3, 0.1, 1.5)
    with pytest.raises(SearchExhausted) as exc:
        hcseries.find_M(H3, 0.1, 0.5, M_max=5)
    assert exc.value.largest == pytest.approx(5.0)
