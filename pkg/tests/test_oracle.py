import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cx
from spherical_mv import oracle
from spherical_mv.errors import ConvergenceError, RangeError
from spherical_mv.rootdata import space_from_name

finite = dict(allow_nan=False, allow_infinity=False)


def test_h3_closed_forms():
    sp = space_from_name("H3")
    assert oracle.integral_I(sp, 1.0, 2.0) == pytest.approx(math.sin(2) / 2, abs=1e-14)
    assert oracle.integral_I(sp, 1.0, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_calI_closed_forms():
    lam = np.linspace(0.1, 20, 50)
    np.testing.assert_allclose(oracle.integral_calI(0, 1.0, lam), 2 * np.sin(lam) / lam, atol=1e-13)
    assert oracle.integral_calI(1, 1.0, 0.0) == pytest.approx(2 * (math.cosh(1) - math.sinh(1)), abs=1e-13)


def test_against_mpmath(derived):
    for rec in derived["integral_I"]:
        sp = space_from_name(rec["space"])
        ref = cx(rec["value"])
        val, err = oracle.integral_I(sp, rec["t"], cx(rec["zeta"]), with_error=True)
        assert abs(val - ref) <= 1e-12 * max(1.0, abs(ref))
    for rec in derived["calI"]:
        ref = cx(rec["value"])
        assert abs(oracle.integral_calI(rec["m"], rec["t"], cx(rec["zeta"])) - ref) <= 1e-12 * max(1.0, abs(ref))


@given(st.integers(0, 12), st.floats(0.05, 5.0), st.floats(-60, 60, **finite), st.floats(-5, 5, **finite))
def test_calI_even(m, t, x, y):
    z = complex(x, y)
    a, err = oracle.integral_calI(m, t, z, with_error=True)
    b = oracle.integral_calI(m, t, -z)
    assert abs(a - b) <= max(oracle.DEFAULT_SPEC.abs_tol * max(1.0, abs(a)), 4 * err)


@given(st.integers(0, 12), st.floats(0.05, 3.0), st.floats(0, 5, **finite))
def test_calI_imaginary_argument_positive(m, t, y):
    val = oracle.integral_calI(m, t, 1j * y)
    assert abs(val.imag) <= 1e-12 * abs(val)
    assert val.real > 0


@pytest.mark.parametrize("name", ["H3", "H5"])
def test_odd_I_is_half_calI(name):
    sp = space_from_name(name)
    z = np.array([0.0, 1.5, 7.0 - 1j, 40.0])
    np.testing.assert_allclose(oracle.integral_I(sp, 1.3, z), 0.5 * oracle.integral_calI(sp.ell, 1.3, z), atol=1e-13)


@pytest.mark.parametrize("name", ["H2", "H4", "CH2", "HH2"])
def test_refinement_within_estimate(name):
    sp = space_from_name(name)
    z = np.array([0.5, 12.0, 33.0 + 1.0j])
    coarse, err = oracle.integral_I(sp, 1.0, z, with_error=True)
    fine = oracle.integral_I(sp, 1.0, z, oracle.QuadratureSpec(panels=8))
    assert np.all(np.abs(coarse - fine) <= np.maximum(err, 1e-15))


def test_spec_validation_and_domain():
    with pytest.raises(ValueError):
        oracle.QuadratureSpec(oscillation_guard=2)
    with pytest.raises(ValueError):
        oracle.QuadratureSpec(max_panels=10**6)
    with pytest.raises(RangeError):
        oracle.integral_I(space_from_name("H3"), 6.0, 1.0)
    with pytest.raises(RangeError):
        oracle.integral_calI(13, 1.0, 1.0)


def test_budget_exhaustion_signals():
    spec = oracle.QuadratureSpec(panels=1, nodes_per_panel=2, max_panels=1, abs_tol=1e-15)
    with pytest.raises(ConvergenceError) as info:
        oracle.integral_calI(3, 2.0, 30.0, spec)
    assert info.value.estimate is not None
