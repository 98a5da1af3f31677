"""Harish-Chandra expansion at rank one.

Chart: |alpha| = 1, t = alpha(H), x = exp(-t), lattice points mu = k*alpha.
Positive roots alpha (multiplicity p) and 2*alpha (multiplicity q), so that

    (k^2 - 2ik lam) Gamma_k
        = 2 p sum_{j>=1} (k - 2j + rho - i lam) Gamma_{k-2j}
        + 2 q sum_{j>=1} 2 (k - 4j + rho - i lam) Gamma_{k-4j},

and phi_lam(exp tH) = c(lam) Phi_lam(t) + c(-lam) Phi_{-lam}(t) with
Phi_lam(t) = sum_k Gamma_k(lam) exp((i lam - rho - k) t).  Only even k
contribute.  Gangolli's coefficients A_k come from the density series d and
reproduce Gamma through Gamma = c * A.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import series
from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    RangeError,
    ResonanceError,
    SearchExhausted,
    TruncationError,
)
from .rootdata import RankOneSpace
from .specfun import log_gamma

RESONANCE_TOL = 1e-10
CROSS_TOL = 1e-10
T_MIN = 0.5
# phi is entire in lam but the two HC pieces have poles on (i/2)Z
SINGULAR_RADIUS = 0.1
CAUCHY_RADIUS = 0.25
CAUCHY_NODES = 64


@dataclass(frozen=True)
class RadialDensitySeries:
    """Series in x = exp(-t) of delta^(1/2) e^(-rho t), delta^(-1/2) e^(rho t) and delta^(-1/2) L delta^(1/2)."""

    space: RankOneSpace
    K: int
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray


def radial_density(space: RankOneSpace, K: int) -> RadialDensitySeries:
    """delta = (e^t - e^-t)^p (e^2t - e^-2t)^q = e^(2 rho t) (1 - x^2)^p (1 - x^4)^q."""
    if not 0 <= K <= 200:
        raise RangeError(f"K must lie in 0..200, got {K}")
    n = K + 1
    p, q, rho = space.p, space.q, space.rho
    b = series.mul(series.binomial_series(p / 2, n, step=2), series.binomial_series(q / 2, n, step=4), n)
    c = series.mul(series.binomial_series(-p / 2, n, step=2), series.binomial_series(-q / 2, n, step=4), n)
    # d/dt acts as -theta with theta = x d/dx, after peeling e^(rho t)
    k = np.arange(n)
    second = rho * rho * b - 2 * rho * k * b + k * k * b
    d = series.mul(second, c, n)
    return RadialDensitySeries(space, K, b, c, d)


def _check_resonance(lam, K):
    lam = np.asarray(lam, dtype=complex)
    for k in range(1, K + 1):
        den = k * k - 2j * k * lam
        hit = np.abs(den) <= RESONANCE_TOL
        if np.any(hit):
            bad = complex(np.atleast_1d(lam)[np.atleast_1d(hit)][0])
            raise ResonanceError(f"<mu,mu> - 2i<mu,lambda> vanishes at mu = {k} alpha", value=bad, k=k)


def _gamma_table(space: RankOneSpace, lam, K: int, kmin: int = 1) -> np.ndarray:
    """Gamma_k(lam), k = 0..K, vectorized over lam; shape (K+1,) + lam.shape.

    The inner sums run over multiples j >= kmin of each root.  kmin = 1 is
    the correct reading; kmin = 2 exists only to audit the alternative.
    """
    lam = np.asarray(lam, dtype=complex)
    p, q, rho = space.p, space.q, space.rho
    g = np.zeros((K + 1,) + lam.shape, dtype=complex)
    g[0] = 1.0
    for k in range(1, K + 1):
        acc = np.zeros(lam.shape, dtype=complex)
        for j in range(kmin, k // 2 + 1):
            acc += 2 * p * (k - 2 * j + rho - 1j * lam) * g[k - 2 * j]
        if q:
            for j in range(kmin, k // 4 + 1):
                acc += 2 * q * 2 * (k - 4 * j + rho - 1j * lam) * g[k - 4 * j]
        g[k] = acc / (k * k - 2j * k * lam)
    return g


def _gangolli_table(density: RadialDensitySeries, lam, K: int) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    d = density.d
    a = np.zeros((K + 1,) + lam.shape, dtype=complex)
    a[0] = 1.0
    for k in range(1, K + 1):
        acc = np.zeros(lam.shape, dtype=complex)
        for nu in range(1, k + 1):
            if d[nu] != 0:
                acc += d[nu] * a[k - nu]
        a[k] = acc / (k * k - 2j * k * lam)
    return a


@dataclass(frozen=True)
class HCSeriesData:
    space: RankOneSpace
    lam: complex
    K: int
    gamma: np.ndarray
    gangolli: np.ndarray
    density: RadialDensitySeries = field(repr=False)
    cross_residual: float = 0.0
    eta: float | None = None
    H0_scalar: float | None = None


def cross_identity_residual(gamma, c, gangolli) -> float:
    """max_k |Gamma_k - (c * A)_k| / |Gamma_k| (zero entries compared absolutely)."""
    conv = np.convolve(c, gangolli)[: len(gamma)]
    diff = np.abs(gamma - conv)
    scale = np.where(np.abs(gamma) > 0, np.abs(gamma), 1.0)
    return float(np.max(diff / scale))


def gamma_coeffs(space: RankOneSpace, lam: complex, K: int = 60, eta=None, H0_scalar=None,
                 cross_tol: float = CROSS_TOL) -> HCSeriesData:
    """Gamma_k and Gangolli A_k at a single lam, with the cross identity checked."""
    if not 0 <= K <= 200:
        raise RangeError(f"K must lie in 0..200, got {K}")
    lam = complex(lam)
    _check_resonance(lam, K)
    dens = radial_density(space, K)
    g = _gamma_table(space, lam, K)
    a = _gangolli_table(dens, lam, K)
    resid = cross_identity_residual(g, dens.c, a)
    if resid > cross_tol:
        raise ConvergenceError(f"Gamma = c * A identity violated ({resid:.3g})", estimate=resid)
    return HCSeriesData(space, lam, K, g, a, dens, resid, eta, H0_scalar)


# ------------------------------------------------------------- c-function


def c_function(space: RankOneSpace, lam):
    """Harish-Chandra c(lam) for the single indivisible root; c(-i rho) = 1."""
    scalar = np.ndim(lam) == 0
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    z = 1j * lam
    p, q = space.p, space.q
    log_c0 = log_gamma(0.5 * (p + q + 1)).real + (0.5 * p + q) * math.log(2)
    try:
        lg = log_gamma(z)
    except DomainError as exc:
        raise PoleError(f"c-function pole: {exc}", value=exc.value, factor="Gamma(i<lambda,alpha0>)") from None
    a1, a2 = 0.5 * (0.5 * p + q + z), 0.5 * (0.5 * p + 1 + z)
    # zeros of c: a denominator Gamma at a pole
    zero = np.zeros(z.shape, dtype=bool)
    for a in (a1, a2):
        zero |= (np.abs(a.imag) == 0) & (a.real <= 0) & (a.real == np.round(a.real))
    val = np.zeros(z.shape, dtype=complex)
    ok = ~zero
    if ok.any():
        val[ok] = np.exp(log_c0 - z[ok] * math.log(2) + lg[ok] - log_gamma(a1[ok]) - log_gamma(a2[ok]))
    return complex(val[0]) if scalar else val


# ------------------------------------------------------------- phi via HC


def _near_singular(lam):
    """Distance from lam to the lattice (i/2)Z where the HC pieces blow up."""
    lam = np.asarray(lam, dtype=complex)
    nearest = 1j * np.round(2 * lam.imag) / 2
    return np.abs(lam - nearest) < SINGULAR_RADIUS


def _hc_pieces(space, t, lam, K):
    """(value, tail) of c(lam) Phi_lam + c(-lam) Phi_-lam for lam off (i/2)Z."""
    x = math.exp(-t)
    xk = x ** np.arange(K + 1)
    total = np.zeros(lam.shape, dtype=complex)
    tail = np.zeros(lam.shape)
    for sgn in (1, -1):
        sl = sgn * lam
        _check_resonance(sl, K)
        g = _gamma_table(space, sl, K)
        terms = g * xk[:, None]
        phi = np.exp((1j * sl - space.rho) * t) * terms.sum(axis=0)
        cs = c_function(space, sl)
        total += cs * phi
        tail += np.abs(cs * np.exp((1j * sl - space.rho) * t)) * _tail_estimate(terms)
    return total, tail


def _tail_estimate(terms, count=5):
    """Geometric extrapolation from the last `count` nonzero terms (per column)."""
    mags = np.abs(terms)
    nz = np.nonzero(mags.max(axis=1) > 0)[0]
    last = mags[nz[-count:]]
    if last.shape[0] < 2:
        return np.zeros(terms.shape[1])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(last[:-1] > 0, last[1:] / last[:-1], 0.0)
    r = ratios.max(axis=0)
    if np.any(r >= 1):
        raise TruncationError(f"HC series not converging (term ratio {float(r.max()):.3g})", estimate=float(r.max()))
    return last[-1] * r / (1 - r)


def phi_hc(space: RankOneSpace, t: float, lam, K: int = 60, with_info: bool = False):
    """phi_lam(exp tH) from the Harish-Chandra expansion, t >= 0.5.

    Near lam in (i/2)Z, where c(+-lam) or the Gamma recursion is singular
    while phi itself is entire, the value is the mean over a circle of
    radius 0.25 about lam.  Gamma_k grows like k^(2 rho - 1), so large rho
    at small t needs K well above 60 (OH2 at t = 0.5 wants K ~ 120); the
    returned error estimate flags an inadequate K.
    """
    if t < T_MIN:
        raise DomainError(f"phi_hc needs t >= {T_MIN} for convergence, got {t}", value=t)
    if not 1 <= K <= 200:
        raise RangeError(f"K must lie in 1..200, got {K}")
    scalar = np.ndim(lam) == 0
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    val = np.empty(lam.shape, dtype=complex)
    err = np.empty(lam.shape)
    near = _near_singular(lam)
    if (~near).any():
        val[~near], err[~near] = _hc_pieces(space, t, lam[~near], K)
    if near.any():
        ang = np.exp(2j * math.pi * (np.arange(CAUCHY_NODES) + 0.5) / CAUCHY_NODES)
        ring = lam[near][:, None] + CAUCHY_RADIUS * ang[None, :]
        v, e = _hc_pieces(space, t, ring.ravel(), K)
        val[near] = v.reshape(ring.shape).mean(axis=1)
        err[near] = e.reshape(ring.shape).max(axis=1)
    if scalar:
        val, err = complex(val[0]), float(err[0])
    return (val, err) if with_info else val


# ------------------------------------------------------------- eta and M


@dataclass(frozen=True)
class EtaVerdict:
    eta: float
    checks: dict  # name -> (ok, offending quantity or None)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def failed(self):
        return [k for k, (ok, _) in self.checks.items() if not ok]


def _in_negative_lattice(v, step, tol=1e-12):
    """v in -step*Z^+ = {-step, -2 step, ...}."""
    k = -v / step
    return k > 0.5 and abs(k - round(k)) < tol


def eta_conditions(space: RankOneSpace, eta: float) -> EtaVerdict:
    """Conditions (a)-(e) on eta at rank one, W = {+1, -1}."""
    eta = float(eta)
    p, q = space.p, space.q
    checks = {"a": (eta > 0, None if eta > 0 else eta), "b": (eta < 0.25, None if eta < 0.25 else eta)}
    for name, shift, step in (("c", 0.0, 1), ("d", p / 2 + q, 2), ("e", p / 2 + 1, 2)):
        bad = [s * eta + shift for s in (1, -1) if _in_negative_lattice(s * eta + shift, step)]
        checks[name] = (not bad, bad[0] if bad else None)
    return EtaVerdict(eta, checks)


@dataclass(frozen=True)
class FindMResult:
    M_star: float
    M_grid: np.ndarray
    C_M: np.ndarray
    m1: float
    m2: float
    K_H0: float
    K_verified: bool
    eta: float
    H0_scalar: float

    @property
    def C_star(self) -> float:
        return float(self.C_M[np.searchsorted(self.M_grid, self.M_star)])


def c_envelope(space: RankOneSpace, eta: float, xi=None):
    """(m1, m2): extremes of |c(s(xi - i eta))| (1+xi)^((p+q)/2); m1 over s = e, m2 over both s."""
    if xi is None:
        xi = np.concatenate([[0.0], np.logspace(-3, 3, 601)])
    w = (1 + np.abs(xi)) ** (0.5 * (space.p + space.q))
    lam = xi - 1j * eta
    f_e = np.abs(c_function(space, lam)) * w
    f_s = np.abs(c_function(space, -lam)) * w
    return float(f_e.min()), float(max(f_e.max(), f_s.max()))


def gamma_envelope(space: RankOneSpace, eta: float, H0_scalar: float, K_fit: int = 10, K_check: int = 60,
                   xi=(0.0, 1.0, 5.0, 25.0)):
    """K_H0 = max |Gamma_k(s(xi - i eta))| e^(-k H0) over k <= K_fit; verified up to K_check."""
    xi = np.asarray(xi, dtype=float)
    lam = np.concatenate([xi - 1j * eta, -(xi - 1j * eta)])
    g = np.abs(_gamma_table(space, lam, K_check)) * np.exp(-H0_scalar * np.arange(K_check + 1))[:, None]
    K_H0 = float(g[: K_fit + 1].max())
    return K_H0, bool(g.max() <= K_H0 * (1 + 1e-12))


def lower_bound_constant(M, m1, m2, K_H0, eta, H0_scalar):
    """C_M at rank one: m(k alpha) = k, m(eta - s eta) = 2 eta, the e^(mu(H0)) kept inside the sums."""
    M = np.asarray(M, dtype=float)
    r = np.exp(-(M - H0_scalar))
    s1 = r / (1 - r)
    s0 = 1 / (1 - r)
    return m1 - m2 * K_H0 * (s1 + np.exp(-2 * eta * M) * s0)


def find_M(space: RankOneSpace, eta: float, H0_scalar: float, K: int = 60, M_max: float = 200.0,
           M_step: float = 0.25) -> FindMResult:
    """Least M on a grid with C_M > 0."""
    verdict = eta_conditions(space, eta)
    if not verdict.ok:
        raise DomainError(f"eta = {eta} violates conditions {verdict.failed()}", value=eta)
    if not 0 < H0_scalar <= 1:
        raise DomainError("H0_scalar must lie in (0, 1]", value=H0_scalar)
    m1, m2 = c_envelope(space, eta)
    K_H0, ok = gamma_envelope(space, eta, H0_scalar, K_check=K)
    grid = np.arange(H0_scalar + M_step, M_max + 0.5 * M_step, M_step)
    C = lower_bound_constant(grid, m1, m2, K_H0, eta, H0_scalar)
    pos = np.nonzero(C > 0)[0]
    if pos.size == 0:
        raise SearchExhausted(f"C_M <= 0 for all M up to {grid[-1]:g}", largest=float(grid[-1]))
    return FindMResult(float(grid[pos[0]]), grid, C, m1, m2, K_H0, ok, float(eta), float(H0_scalar))


@dataclass(frozen=True)
class LowerBoundVerdict:
    passed: bool
    t: float
    xi: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray

    @property
    def margin(self) -> np.ndarray:
        return self.lhs / self.rhs

    @property
    def worst(self):
        i = int(np.argmin(self.margin))
        return float(self.xi[i]), float(self.lhs[i]), float(self.rhs[i])


def lower_bound_check(space: RankOneSpace, eta: float, H_scalar: float, xi_grid, C_M: float, M_star=None,
                      K: int = 60) -> LowerBoundVerdict:
    """e^((rho - eta) t) |phi_(xi - i eta)(exp tH)| >= C_M (1 + |xi|)^(-(p+q)/2) on xi_grid."""
    if M_star is not None and H_scalar <= M_star:
        raise DomainError(f"H_scalar = {H_scalar} must exceed M_star = {M_star}", value=H_scalar)
    xi = np.asarray(xi_grid, dtype=float)
    t = float(H_scalar)
    phi = phi_hc(space, t, xi - 1j * eta, K=K)
    lhs = math.exp((space.rho - eta) * t) * np.abs(phi)
    rhs = C_M * (1 + np.abs(xi)) ** (-0.5 * (space.p + space.q))
    return LowerBoundVerdict(bool(np.all(lhs >= rhs)), t, xi, lhs, rhs)
