import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherical_mv import certifier, rankone
from spherical_mv.certifier import CertifyConfig
from spherical_mv.rootdata import space_from_name

REDUCED = CertifyConfig(xi_max=200.0, xi_step=4.0, samples=256)


def sinc_kernel(t=1.0):
    """sin(zeta t)/zeta, with its Taylor series near 0."""

    def u(z):
        z = np.asarray(z, dtype=complex)
        out = np.empty_like(z)
        small = np.abs(z) < 1e-4
        zs = z[small]
        out[small] = t - t**3 * zs**2 / 6
        out[~small] = np.sin(t * z[~small]) / z[~small]
        return out

    return u


# ------------------------------------------------------------- disk sup


def test_sup_examples(derived):
    assert certifier.sup_on_disk(lambda z: np.ones_like(z), 3.0, 2.0) == 1.0
    assert certifier.sup_on_disk(lambda z: z, 0.0, 0.7) == pytest.approx(0.7, rel=1e-15)
    ref = derived["disk_sup_sinc"]
    got = certifier.sup_on_disk(sinc_kernel(), ref["center"], ref["radius"])
    assert got >= ref["value"] * (1 - 1e-4)
    assert got <= ref["value"] * (1 + 1e-12)
    assert got >= math.sinh(1) / math.pi


def test_sup_detail_and_errors():
    d = certifier.sup_on_disk(np.exp, 0.0, 1.0, samples=64, detail=True)
    assert d.samples == 64 and d.value == pytest.approx(math.e) and 0 < d.variation < 0.2
    with pytest.raises(ValueError):
        certifier.sup_on_disk(np.exp, 0.0, 0.0)
    h2 = space_from_name("H2")
    bad = certifier.kernel_evaluator(h2, 1.0, route="recurrence")
    with pytest.raises(certifier.EvaluationError) as exc:
        certifier.sup_on_disk(bad, 5.0, 1.0)
    assert exc.value.point is not None


# ------------------------------------------------------------- slow decrease


def test_constant_function():
    xi = np.linspace(0, 200, 51)
    rep = certifier.certify_slow_decrease(lambda z: np.ones_like(z), 2.0, xi, samples=64)
    assert rep.D == 0 and rep.B == pytest.approx(1.0) and rep.verdict
    assert certifier.certify_slow_decrease(lambda z: np.ones_like(z), 2.0, xi, target=(1.0, 2.0, 0.0)).verdict
    assert not certifier.certify_slow_decrease(lambda z: np.ones_like(z), 2.0, xi, target=(1.5, 2.0, 0.0)).verdict


@pytest.fixture(scope="module")
def sinc_report():
    xi = np.arange(0.0, 400.0 + 1, 2.0)
    return certifier.certify_slow_decrease(sinc_kernel(), 7.0, xi, samples=256, window=math.pi)


def test_sinc_kernel(sinc_report):
    rep = sinc_report
    assert rep.verdict and rep.D <= 1.2
    assert np.all(rep.sup_values >= rep.real_sup)
    assert np.all(rep.sup_values >= np.abs(sinc_kernel()(rep.xi_grid.astype(complex))))


def test_monotone_in_A():
    xi = np.linspace(0, 100, 26)
    u = sinc_kernel()
    small = certifier.certify_slow_decrease(u, 1.0, xi, samples=128)
    large = certifier.certify_slow_decrease(u, 2.0, xi, samples=128)
    assert np.all(large.sup_values >= small.sup_values)


@settings(max_examples=15)
@given(st.floats(1e-3, 1e3), st.floats(0, 2 * math.pi))
def test_scale_equivariance(kappa, phase):
    xi = np.linspace(0, 100, 26)
    u = sinc_kernel()
    k = kappa * np.exp(1j * phase)
    a = certifier.certify_slow_decrease(u, 3.0, xi, samples=64)
    b = certifier.certify_slow_decrease(lambda z: k * u(z), 3.0, xi, samples=64)
    assert b.B == pytest.approx(kappa * a.B, rel=1e-9)
    assert b.D == pytest.approx(a.D, abs=1e-9)
    assert b.verdict == a.verdict


def test_nonfinite_aborts():
    with pytest.raises(certifier.EvaluationError) as exc:
        certifier.certify_slow_decrease(lambda z: np.where(np.real(z) > 50, np.nan, 1.0), 1.0, np.linspace(0, 100, 11))
    assert exc.value.point == 50.0  # first disk reaching Re zeta > 50


def test_csv_and_json_schema(sinc_report):
    doc = json.loads(sinc_report.to_json())
    assert doc["schema_version"] == certifier.SCHEMA_VERSION
    assert set(doc["fitted"]) == {"B", "C", "D"} and doc["verdict"] == "pass"
    lines = sinc_report.to_csv().splitlines()
    assert lines[0] == "xi,radius,sup,bound,margin"
    assert len(lines) == len(sinc_report.xi_grid) + 1


# ------------------------------------------------------------- growth


def test_growth_sinc():
    g = certifier.growth_type_check(sinc_kernel(), R=1.0)
    assert g.passed and math.isfinite(g.A) and g.A <= 1.0 + 1e-12


def test_growth_gauss_fails():
    def gauss(z):
        with np.errstate(over="ignore", invalid="ignore"):
            return np.exp(np.asarray(z) ** 2)

    for R in (1.0, 10.0):
        for N in (0, 5):
            assert not certifier.growth_type_check(gauss, R=R, N=N).passed


def test_growth_h4_kernel():
    u = certifier.kernel_evaluator(space_from_name("H4"), 1.0)
    assert certifier.growth_type_check(u, R=1.0).passed


def test_growth_needs_right_exponent():
    # the exponent t is sharp: R = t/2 lets e^(t |Im|) / e^(R |Im|) grow in Im
    g = certifier.growth_type_check(sinc_kernel(2.0), R=1.0, grid=certifier.rectangle(20, 30, 21, 31))
    assert not g.passed


# ------------------------------------------------------------- pipeline


@pytest.fixture(scope="module")
def h3_report():
    return certifier.certify_space(space_from_name("H3"), 1.0, REDUCED)


def test_certify_h3(h3_report):
    assert h3_report.passed and h3_report.D <= 1.2
    assert h3_report.meta["space"] == "H3" and h3_report.growth.passed


def test_certify_h2():
    rep = certifier.certify_space(space_from_name("H2"), 1.0, REDUCED)
    assert rep.passed and abs(rep.D - 0.5) <= 0.2


def test_certify_deterministic(h3_report):
    again = certifier.certify_space(space_from_name("H3"), 1.0, REDUCED)
    assert again.to_json() == h3_report.to_json()
    assert again.to_csv() == h3_report.to_csv()


def test_certify_space_range():
    with pytest.raises(ValueError):
        certifier.certify_space(space_from_name("H3"), 6.0)


def test_default_A():
    assert CertifyConfig().default_A(1.0) == pytest.approx(7.0)
    assert CertifyConfig().default_A(0.5) == pytest.approx(14.0)
    assert CertifyConfig(A=3.0).default_A(1.0) == 3.0


def test_kernel_evaluator_is_I():
    sp = space_from_name("CH2")
    u = certifier.kernel_evaluator(sp, 1.0)
    z = np.array([0.5, 30.0])
    phi = rankone.koornwinder_phi(sp, 1.0, z)
    np.testing.assert_allclose(u(z) * rankone.koornwinder_prefactor(sp, 1.0), phi, rtol=1e-12)
