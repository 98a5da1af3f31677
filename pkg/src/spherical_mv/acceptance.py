"""Acceptance criteria 1-13 as plain functions.

Each ``criterion_k(reduced=False)`` returns a :class:`CriterionResult`.  The
pytest acceptance module runs them on the full grids; ``spherical-mv
selftest`` runs them with ``reduced=True`` (coarser grids, same tolerances).
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import certifier, complexgrp, euclid, hcseries, oracle, rankone
from .errors import DegenerateConfigurationError
from .rootdata import space_from_name, weyl_group_A


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] C{self.number:<2d} {self.title}: {self.detail}"


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def _lam_grid(reduced, lo=0.1, hi=50.0, n=500):
    return np.linspace(lo, hi, n // 5 if reduced else n)


# ------------------------------------------------------------- 1


def criterion_1(reduced: bool = False):
    """calI_0, calI_1 reproduce the closed forms to relative 1e-12."""
    lam = _lam_grid(reduced)
    worst = 0.0
    for t in (0.5, 1.0, 2.0):
        sh, ch = math.sinh(t), math.cosh(t)
        c0 = 2 * np.sin(lam * t) / lam
        c1 = -2 * sh * np.cos(lam * t) / (lam**2 + 1) + 2 * ch * np.sin(lam * t) / (lam * (lam**2 + 1))
        worst = max(worst, _rel(rankone.calI_recurrence(0, t, lam), c0), _rel(rankone.calI_recurrence(1, t, lam), c1))
    return worst <= 1e-12, f"max relative error {worst:.2e} (tol 1e-12)"


# ------------------------------------------------------------- 2


def criterion_2(reduced: bool = False):
    """Recurrence and Bessel-series routes against the oracle, |d|/(1+|oracle|) < 1e-7."""
    worst, where = 0.0, ""
    ts = (0.5, 1.0, 2.0)
    real = _lam_grid(reduced, 0.1, 50.0, 200)
    re, im = np.meshgrid(np.linspace(0.1, 30.0, 6 if reduced else 16), np.linspace(-2.0, 2.0, 5 if reduced else 9))
    odd_grid = np.concatenate([real, (re + 1j * im).ravel()])
    even_grid = np.linspace(20.0, 200.0, 19 if reduced else 91)
    for name in ("H2", "H3", "H4", "H5", "CH2"):
        sp = space_from_name(name)
        grid = odd_grid if sp.is_odd else even_grid
        for t in ts:
            route = "recurrence" if sp.is_odd else "series"
            fast, _, _ = rankone.koornwinder_I(sp, t, grid, route=route, N=6)
            ref = oracle.integral_I(sp, t, grid)
            d = np.abs(fast - ref) / (1 + np.abs(ref))
            if d.max() > worst:
                worst, where = float(d.max()), f"{name} t={t} lam={complex(grid[np.argmax(d)]):.3g}"
    return worst < 1e-7, f"max |d|/(1+|oracle|) {worst:.2e} at {where} (tol 1e-7)"


# ------------------------------------------------------------- 3


def criterion_3(reduced: bool = False):
    """H3 closed form for koornwinder_phi and for the A_1 complex-group formula."""
    sp = space_from_name("H3")
    lam = np.concatenate([_lam_grid(reduced, 0.1, 50.0, 200), [0.7 + 0.4j, 3.0 - 1.5j, 12.0 + 2.0j]])
    w1 = w2 = 0.0
    for t in (0.5, 1.0, 2.0):
        exact = np.sin(lam * t) / (lam * math.sinh(t))
        kw = rankone.koornwinder_phi(sp, t, lam)
        cg = np.array([complexgrp.phi_complex_regular(complexgrp.a1_point(t, z)) for z in lam])
        w1 = max(w1, float(np.max(np.abs(kw - exact))))
        w2 = max(w2, float(np.max(np.abs(cg - exact))))
    ok = w1 <= 1e-10 and w2 <= 1e-10
    return ok, f"koornwinder {w1:.2e}, A_1 {w2:.2e} (tol 1e-10)"


# ------------------------------------------------------------- 4


def remainder_reference():
    """Frozen 30-digit reference values of I on t = 1, lambda = 20, 22, ..., 200."""
    text = resources.files("spherical_mv").joinpath("data/remainder_reference.json").read_text()
    doc = json.loads(text)
    return doc["t"], np.asarray(doc["lambda"], dtype=float), {k: np.asarray(v) for k, v in doc["values"].items()}


def envelope_slope(lam, err, blocks: int = 10) -> float:
    """log-log slope through the per-block maxima of an oscillating error."""
    idx = [b[np.argmax(err[b])] for b in np.array_split(np.arange(lam.size), blocks)]
    return float(np.polyfit(np.log(lam[idx]), np.log(err[idx]), 1)[0])


def remainder_profile(name: str, N: int, full_N: int = 12):
    """(lam, tail, direct, s_full_err) for the N-term Bessel series.

    tail = |sum_{N <= m < full_N} term_m| has no cancellation, so it resolves
    remainders far below the double-precision size of I; direct = |I - S_N|
    is only meaningful where it exceeds the rounding floor.
    """
    t, lam, values = remainder_reference()
    sp = space_from_name(name)
    ref = values[name]
    terms = rankone._series_terms(rankone.build_bessel_series(sp, t, full_N), lam.astype(complex)).real
    tail = np.abs(terms[:, N:].sum(axis=1))
    direct = np.abs(ref - terms[:, :N].sum(axis=1))
    s_full = float(np.max(np.abs(terms.sum(axis=1) - ref)))
    return lam, tail, direct, s_full


def criterion_4(reduced: bool = False):
    """Remainder slope <= -(N-1) for N in {3, 5}, H2 and CH2, lambda in [20, 200]."""
    ok, parts = True, []
    for name in ("H2", "CH2"):
        for N in (3, 5):
            lam, tail, direct, s_full = remainder_profile(name, N)
            slope = envelope_slope(lam, tail)
            res = direct > 1e-13
            agree = float(np.max(np.abs(tail[res] - direct[res]) / direct[res])) if res.any() else 0.0
            good = slope <= -(N - 1) and s_full <= 1e-13 and agree <= 1e-2
            ok &= good
            parts.append(f"{name} N={N} slope {slope:.2f}")
    return ok, ", ".join(parts) + " (need <= -(N-1); 12-term sum within 1e-13 of reference)"


# ------------------------------------------------------------- 5


def criterion_5(reduced: bool = False):
    """|c(+-(xi - i eta))| (1+xi)^((p+q)/2) within [r1, r2], r2/r1 <= 50."""
    xi = np.logspace(0, 3, 61 if reduced else 301)
    ok, parts = True, []
    for name in ("H2", "H3", "H4", "CH2"):
        sp = space_from_name(name)
        w = (1 + xi) ** (0.5 * (sp.p + sp.q))
        vals = np.concatenate([np.abs(hcseries.c_function(sp, s * (xi - 0.1j))) * w for s in (1, -1)])
        r1, r2 = float(vals.min()), float(vals.max())
        ok &= r1 > 0 and r2 / r1 <= 50
        parts.append(f"{name} {r2 / r1:.2f}")
    return ok, "r2/r1: " + ", ".join(parts) + " (tol 50)"


# ------------------------------------------------------------- 6


def criterion_6(reduced: bool = False):
    """phi_hc vs koornwinder_phi to 1e-6; Gamma = c * A to 1e-10 for k <= 60."""
    lam = np.linspace(0.5, 20.0, 14 if reduced else 40)
    worst, resid = 0.0, 0.0
    for name in ("H2", "H3", "H4", "CH2"):
        sp = space_from_name(name)
        for t in (1.0, 2.0):
            hc = hcseries.phi_hc(sp, t, lam, K=60)
            kw = rankone.koornwinder_phi(sp, t, lam)
            worst = max(worst, float(np.max(np.abs(hc - kw))))
        for z in (0.75, 3.3 - 0.1j, 11.0 + 0.5j):
            resid = max(resid, hcseries.gamma_coeffs(sp, z, K=60).cross_residual)
    ok = worst <= 1e-6 and resid <= 1e-10
    return ok, f"max |phi_hc - phi_K| {worst:.2e} (tol 1e-6), cross residual {resid:.2e} (tol 1e-10)"


# ------------------------------------------------------------- 7


def h3_gamma_deviation(kmin: int = 1, K: int = 40, lam=(0.3, 1.7 - 0.2j, 9.0 + 1.0j)) -> float:
    """max |Gamma_k - [k even]| on H3, which should vanish (Phi = e^{(i lam - 1)t}/(1 - x^2))."""
    g = hcseries._gamma_table(space_from_name("H3"), np.asarray(lam, dtype=complex), K, kmin=kmin)
    geo = (np.arange(K + 1) % 2 == 0).astype(float)[:, None]
    return float(np.max(np.abs(g - geo)))


def criterion_7(reduced: bool = False):
    """H3 Gamma series is the geometric series of 1/(1-x^2) for k <= 40."""
    dev = h3_gamma_deviation()
    alt = h3_gamma_deviation(kmin=2)
    ok = dev <= 1e-10 and alt > 1e-10
    return ok, f"k>=1 reading {dev:.2e} (tol 1e-10); k>1 reading deviates by {alt:.2e}"


# ------------------------------------------------------------- 8, 9


CERTIFY_SPACES = ("H2", "H3", "H4", "CH2")
CERTIFY_TIMES = (0.5, 1.0, 2.0)
_certify_cache: dict = {}


def certify_runs(reduced: bool = False):
    """certify_space over the acceptance spaces and times (cached per process)."""
    if reduced not in _certify_cache:
        cfg = certifier.CertifyConfig(xi_max=200.0, xi_step=4.0, samples=256) if reduced else certifier.CertifyConfig()
        _certify_cache[reduced] = {
            (name, t): certifier.certify_space(space_from_name(name), t, cfg)
            for name in CERTIFY_SPACES
            for t in ((1.0,) if reduced else CERTIFY_TIMES)
        }
    return _certify_cache[reduced]


def criterion_8(reduced: bool = False):
    """Slow decrease certified; D near l + 1/2 for even n, D <= 1.2 for H3."""
    ok, parts = True, []
    for (name, t), rep in certify_runs(reduced).items():
        sp = space_from_name(name)
        good = rep.verdict and (abs(rep.D - (sp.ell + 0.5)) <= 0.25 if not sp.is_odd else rep.D <= 1.2)
        ok &= good
        parts.append(f"{name}@{t:g} D={rep.D:.2f}{'' if good else '!'}")
    return ok, ", ".join(parts)


def gauss_evaluator(zeta):
    """e^{zeta^2}: entire, but not of exponential type."""
    with np.errstate(over="ignore", invalid="ignore"):
        return np.exp(np.asarray(zeta, dtype=complex) ** 2)


def criterion_9(reduced: bool = False):
    """Growth type R = t, N = 0 for every kernel; e^{zeta^2} fails."""
    runs = certify_runs(reduced)
    kernels = all(rep.growth.passed for rep in runs.values())
    worst = max(rep.growth.outer_max / rep.growth.inner_max for rep in runs.values())
    gauss = certifier.growth_type_check(gauss_evaluator, R=1.0, N=0, grid=certifier.rectangle(200, 3))
    ok = kernels and not gauss.passed
    return ok, (f"{len(runs)} kernels pass (max outer/inner {worst:.2f}, factor {certifier.GROWTH_FACTOR}); "
                f"e^(zeta^2) {'passes (wrong)' if gauss.passed else 'fails'}")


# ------------------------------------------------------------- 10


def random_configuration(rng: np.random.Generator, min_dist: float = 0.1):
    """Points in [-1, 1]^n, n in 1..3, N in 2..5, pairwise distance >= min_dist, unique maximal norm."""
    while True:
        n = int(rng.integers(1, 4))
        N = int(rng.integers(2, 6))
        pts = rng.uniform(-1, 1, size=(N, n))
        d = np.linalg.norm(pts[:, None] - pts[None, :], axis=-1) + np.eye(N) * 9
        if d.min() < min_dist:
            continue
        try:
            euclid.deltafcn_constant_A(pts)
        except DegenerateConfigurationError:
            continue
        return pts


def xi_directions(rng: np.random.Generator, n: int, radii):
    """Rows r * u with u random unit vectors (one per radius)."""
    u = rng.normal(size=(len(radii), n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    return np.asarray(radii)[:, None] * u


def criterion_10(reduced: bool = False):
    """Delta-sum lower bounds on {0,1} and 100 random configurations; inverted exponent fails."""
    radii = np.linspace(0, 100, 101 if reduced else 401)
    base = euclid.verify_delta_bound([0.0, 1.0], xi_grid=radii)
    rng = np.random.default_rng(2024)
    count = 30 if reduced else 100
    fails = 0
    for _ in range(count):
        pts = random_configuration(rng)
        grid = radii if pts.shape[1] == 1 else xi_directions(rng, pts.shape[1], radii)
        fails += not euclid.verify_delta_bound(pts, xi_grid=grid).passed
    inverted = euclid.verify_delta_bound([0.0, 1.0], xi_grid=radii, exponent_scale=1.5)
    ok = base.passed and fails == 0 and not inverted.passed
    return ok, f"{{0,1}} {'pass' if base.passed else 'fail'}, random {count - fails}/{count} pass, inverted " + (
        "fails" if not inverted.passed else "passes (wrong)")


# ------------------------------------------------------------- 11


def wall_points(rng: np.random.Generator, count: int):
    """(H, lam) pairs on A_2 with H on a single wall (either side of the diagonal)."""
    out = []
    for k in range(count):
        a = rng.uniform(0.2, 1.5)
        H = [a, a, -2 * a] if k % 2 == 0 else [-2 * a, a, a]
        lam = rng.uniform(-3, 3, 3) + 1j * rng.uniform(-0.5, 0.5, 3)
        out.append((np.asarray(H), lam - lam.mean()))
    return out


def criterion_11(reduced: bool = False):
    """Weyl sum = product on A_2, A_3; nonregular formula continuous across walls of A_2."""
    rng = np.random.default_rng(11)
    count = 30 if reduced else 100
    dev = 0.0
    for rank in (2, 3):
        W = weyl_group_A(rank)
        for _ in range(count):
            H = rng.uniform(-1.5, 1.5, rank + 1)
            H -= H.mean()
            s = complexgrp.weyl_denominator(W, H, route="sum")
            p = complexgrp.weyl_denominator(W, H, route="product")
            dev = max(dev, abs(s - p) / abs(p))
    W2 = weyl_group_A(2)
    jump = 0.0
    for H, lam in wall_points(rng, 10 if reduced else 30):
        direct = complexgrp.phi_complex(W2, H, lam)
        limit = complexgrp.regular_limit(W2, H, lam)
        jump = max(jump, abs(direct - limit) / max(1.0, abs(direct)))
    ok = dev <= 1e-12 and jump <= 1e-7
    return ok, f"sum/product {dev:.2e} (tol 1e-12), wall continuity {jump:.2e} (tol 1e-7)"


# ------------------------------------------------------------- 12


def criterion_12(reduced: bool = False):
    """find_M on H3 (eta 0.1, H0 0.5): finite M*, monotone C_M, lower bound at M* + 1; 100 C_M fails."""
    sp = space_from_name("H3")
    res = hcseries.find_M(sp, 0.1, 0.5)
    mono = bool(np.all(np.diff(res.C_M) >= 0))
    xi = np.linspace(0, 200, 101 if reduced else 401)
    C = res.C_star
    check = hcseries.lower_bound_check(sp, 0.1, res.M_star + 1, xi, C, M_star=res.M_star)
    inverted = hcseries.lower_bound_check(sp, 0.1, res.M_star + 1, xi, 100 * C, M_star=res.M_star)
    ok = math.isfinite(res.M_star) and mono and check.passed and not inverted.passed
    return ok, (f"M*={res.M_star:g}, C*={C:.3g}, monotone {mono}, bound at M*+1 "
                f"{'pass' if check.passed else 'fail'} (min margin {check.margin.min():.2f}), "
                f"100 C* {'fails' if not inverted.passed else 'passes (wrong)'}")


# ------------------------------------------------------------- 13


def criterion_13(reduced: bool = False):
    """phi_{-i rho} = 1 for Koornwinder, Harish-Chandra and complex-group evaluators."""
    dk = dh = dc = 0.0
    for name in ("H2", "H3", "H4", "H5", "CH2", "CH3", "HH2", "OH2"):
        sp = space_from_name(name)
        for t in (0.5, 1.0, 2.0):
            dk = max(dk, abs(rankone.koornwinder_phi(sp, t, -1j * sp.rho) - 1))
            dh = max(dh, abs(hcseries.phi_hc(sp, t, -1j * sp.rho) - 1))
    rng = np.random.default_rng(13)
    for rank in (1, 2, 3, 4):
        W = weyl_group_A(rank)
        for _ in range(3 if reduced else 10):
            H = rng.uniform(-1.0, 1.0, rank + 1)
            H -= H.mean()
            dc = max(dc, abs(complexgrp.phi_complex(W, H, -1j * W.rho) - 1))
    ok = max(dk, dh, dc) <= 1e-9
    return ok, f"koornwinder {dk:.1e}, HC {dh:.1e}, complex {dc:.1e} (tol 1e-9)"


# ------------------------------------------------------------- driver


CRITERIA = {
    1: ("closed-form base cases", criterion_1),
    2: ("route agreement", criterion_2),
    3: ("H3 closed form", criterion_3),
    4: ("remainder decay", criterion_4),
    5: ("c-function asymptotics", criterion_5),
    6: ("HC vs Koornwinder", criterion_6),
    7: ("H3 Gamma series", criterion_7),
    8: ("slow-decrease certification", criterion_8),
    9: ("growth type", criterion_9),
    10: ("Euclidean bounds", criterion_10),
    11: ("Weyl denominator", criterion_11),
    12: ("M-finder", criterion_12),
    13: ("phi at -i rho", criterion_13),
}


def run_criterion(k: int, reduced: bool = False) -> CriterionResult:
    title, fn = CRITERIA[k]
    start = time.perf_counter()
    try:
        passed, detail = fn(reduced)
    except Exception as exc:  # a crash is a failure, reported in the detail
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(k, title, bool(passed), detail, time.perf_counter() - start)


def run_all(reduced: bool = False, only=None):
    return [run_criterion(k, reduced) for k in (only or CRITERIA)]
