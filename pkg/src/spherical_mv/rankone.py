"""Fast evaluators for Koornwinder's integral I(zeta) and phi_zeta(exp tH).

Odd n (real hyperbolic, q = 0): I = calI_l / 2 with calI_m from the
three-term recurrence in m.  Even n: Bessel series
I = sum_m d_m (t/zeta)^(l+m) J_(l+m)(zeta t) built from the expansion of
(cosh t - cosh s)/(t^2 - s^2) in z = t^2 - s^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle, series
from .errors import DomainError, RangeError
from .rootdata import RankOneSpace
from .specfun import bessel_j_orders, double_factorial, hypergeometric_coefficients, log_gamma

RESONANCE_GUARD = 1e-6
SERIES_CROSSOVER = 1.0
DEFAULT_SERIES_N = 10


def _sin_over(zeta, t):
    """sin(zeta t) / zeta, analytic at zeta = 0."""
    zeta = np.asarray(zeta, dtype=complex)
    small = np.abs(zeta * t) < 1e-4
    safe = np.where(small, 1.0, zeta)
    x2 = (zeta * t) ** 2
    taylor = t * (1 - x2 / 6 + x2 * x2 / 120)
    return np.where(small, taylor, np.sin(zeta * t) / safe)


def calI_recurrence(m: int, t: float, zeta, spec: oracle.QuadratureSpec = oracle.DEFAULT_SPEC, guard: bool = True):
    """int_{-t}^t cos(zeta s)(cosh t - cosh s)^m ds via the recurrence in m.

    (zeta^2 + k^2) I_k = k(2k-1) cosh t I_{k-1} - k(k-1) sinh^2 t I_{k-2},  k >= 2.

    Points with |zeta^2 + k^2| < 1e-6 for some 1 <= k <= m (vanishing
    denominators) are delegated to the quadrature oracle.  With `guard`, so
    are points where the forward recursion cancels: a magnitude bound is
    carried alongside and compared with the result.
    """
    if not 0 <= m <= 12:
        raise RangeError(f"m must lie in 0..12, got {m}")
    if t <= 0:
        raise DomainError("t must be positive", value=t)
    scalar = np.ndim(zeta) == 0
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    z2 = zeta * zeta
    bad = np.zeros(zeta.shape, dtype=bool)
    for k in range(1, m + 1):
        bad |= np.abs(z2 + k * k) < RESONANCE_GUARD
    zs = np.where(bad, 0.0, zeta)
    z2s = zs * zs
    ch, sh = math.cosh(t), math.sinh(t)
    so = _sin_over(zs, t)
    prev2 = 2 * so
    out, size = prev2, np.abs(prev2)
    if m >= 1:
        cs = np.cos(zs * t)
        prev1 = (-2 * sh * cs + 2 * ch * so) / (z2s + 1)
        size2, size1 = size, (2 * sh * np.abs(cs) + 2 * ch * np.abs(so)) / np.abs(z2s + 1)
        out, size = prev1, size1
        for k in range(2, m + 1):
            den = z2s + k * k
            cur = (k * (2 * k - 1) * ch * prev1 - k * (k - 1) * sh * sh * prev2) / den
            size = (k * (2 * k - 1) * ch * size1 + k * (k - 1) * sh * sh * size2) / np.abs(den)
            prev2, prev1 = prev1, cur
            size2, size1 = size1, size
            out = cur
    out = np.array(out, dtype=complex)
    if guard:
        bad |= 8 * np.finfo(float).eps * size * (m + 1) > 1e-10 * np.abs(out)
    if bad.any():
        out[bad] = oracle.integral_calI(m, t, zeta[bad], spec)
    return complex(out[0]) if scalar else out


def I_odd(space: RankOneSpace, t: float, zeta, spec: oracle.QuadratureSpec = oracle.DEFAULT_SPEC):
    if not space.is_odd:
        raise DomainError(f"I_odd needs odd n, got n = {space.n}", value=space.n)
    return 0.5 * calI_recurrence(space.ell, t, zeta, spec)


# ------------------------------------------------------------- even n


def _f_derivative(j: int, w: float) -> float:
    """j-th derivative of f(w) = sum_k w^k / (2k)!  (so that cosh x = f(x^2))."""
    total, k = 0.0, j
    while True:
        term = math.factorial(k) / (math.factorial(k - j) * math.factorial(2 * k)) * w ** (k - j)
        total += term
        if k > j + 5 and term < 1e-18 * total:
            return total
        k += 1


def taylor_a(t: float, count: int) -> np.ndarray:
    """a_k = (-1)^k f^(k+1)(t^2) / (k+1)!, the coefficients of (f(t^2) - f(t^2 - z))/z."""
    w = t * t
    return np.array([(-1) ** k * _f_derivative(k + 1, w) / math.factorial(k + 1) for k in range(count)])


@dataclass(frozen=True)
class BesselSeriesData:
    t: float
    space: RankOneSpace
    N: int
    a: np.ndarray
    b: dict  # power index m -> array b_j^(m), j = 0..N-1
    c: np.ndarray
    d: np.ndarray

    @property
    def ell(self) -> int:
        return self.space.ell


def build_bessel_series(space: RankOneSpace, t: float, N: int) -> BesselSeriesData:
    if space.is_odd:
        raise DomainError(f"Bessel series needs even n, got n = {space.n}", value=space.n)
    if not 1 <= N <= 12:
        raise RangeError(f"N must lie in 1..12, got {N}")
    if t <= 0:
        raise DomainError("t must be positive", value=t)
    ell = space.ell
    a = taylor_a(t, N)
    ratios = a / a[0]
    b = {m: series.binomial_power(ratios, m - 0.5, N) for m in range(ell, ell + N)}
    c = hypergeometric_coefficients(1 - space.q / 2, space.q / 2, (space.n - 1) / 2, N)
    c = c / (2 * math.cosh(t)) ** np.arange(N)
    d = np.empty(N)
    for m in range(N):
        acc = sum(a[0] ** (ell + k - 0.5) * b[ell + k][m - k] * c[k] for k in range(m + 1))
        d[m] = 0.5 * math.pi * double_factorial(2 * ell + 2 * m - 1) * acc
    return BesselSeriesData(t, space, N, a, b, c, d)


def _series_terms(data: BesselSeriesData, zeta):
    """Array (len(zeta), N) of d_m (t/zeta)^(l+m) J_(l+m)(zeta t)."""
    ell, t = data.ell, data.t
    orders = list(range(ell, ell + data.N))
    J = bessel_j_orders(orders, zeta * t)
    powers = (t / zeta[:, None]) ** np.array(orders)[None, :]
    return data.d[None, :] * powers * J


def I_even_series(data: BesselSeriesData, zeta, spec: oracle.QuadratureSpec = oracle.DEFAULT_SPEC):
    """Bessel-series value of I(zeta); |zeta| < 1 is delegated to the oracle.

    Returns (value, remainder_bound_order) with remainder_bound_order = N.
    """
    scalar = np.ndim(zeta) == 0
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    out = np.empty(zeta.shape, dtype=complex)
    near = np.abs(zeta) < SERIES_CROSSOVER
    if near.any():
        out[near] = oracle.integral_I(data.space, data.t, zeta[near], spec)
    if (~near).any():
        out[~near] = _series_terms(data, zeta[~near]).sum(axis=1)
    return (complex(out[0]) if scalar else out), data.N


# ------------------------------------------------------------- assembly


def koornwinder_prefactor(space: RankOneSpace, t: float) -> float:
    """phi = prefactor * I; the reciprocal of the constant multiplying phi in Koornwinder's formula."""
    n, q = space.n, space.q
    log_num = 0.5 * (n - 1) * math.log(2) + log_gamma(n / 2).real
    log_den = log_gamma((n - 1) / 2).real + 0.5 * math.log(math.pi)
    log_den += (n - 2) * math.log(math.sinh(t)) + 0.5 * q * math.log(math.cosh(t))
    return math.exp(log_num - log_den)


ROUTES = ("auto", "oracle", "recurrence", "series")


def koornwinder_I(space, t, zeta, route="auto", N=DEFAULT_SERIES_N, tol=1e-12, spec=oracle.DEFAULT_SPEC):
    """I(zeta) by the requested route; returns (values, route_labels, error_estimates)."""
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    labels = np.empty(zeta.shape, dtype=object)
    err = np.zeros(zeta.shape)
    if route == "oracle":
        val, err = oracle.integral_I(space, t, zeta, spec, with_error=True)
        labels[:] = "oracle"
        return np.atleast_1d(val), labels, np.atleast_1d(err)
    if space.is_odd:
        if route not in ("auto", "recurrence"):
            raise DomainError(f"route {route!r} unavailable for odd n")
        labels[:] = "recurrence"
        return np.atleast_1d(I_odd(space, t, zeta, spec)), labels, err
    if route not in ("auto", "series"):
        raise DomainError(f"route {route!r} unavailable for even n")
    data = build_bessel_series(space, t, N)
    val = np.empty(zeta.shape, dtype=complex)
    near = np.abs(zeta) < SERIES_CROSSOVER
    far = ~near
    if far.any():
        terms = _series_terms(data, zeta[far])
        val[far] = terms.sum(axis=1)
        # last retained term as the truncation indicator
        err[far] = np.abs(terms[:, -1])
        labels[far] = "series"
        if route == "auto":
            loose = np.zeros(zeta.shape, dtype=bool)
            loose[far] = err[far] > tol * np.maximum(1.0, np.abs(val[far]))
            near |= loose
    if near.any():
        v, e = oracle.integral_I(space, t, zeta[near], spec, with_error=True)
        val[near], err[near], labels[near] = v, e, "oracle"
    return val, labels, err


def koornwinder_phi(space: RankOneSpace, t: float, zeta, route="auto", N=DEFAULT_SERIES_N, with_info=False, **kw):
    """phi_zeta(exp tH) on a rank-one space."""
    if t <= 0:
        raise DomainError("t must be positive", value=t)
    scalar = np.ndim(zeta) == 0
    val, labels, err = koornwinder_I(space, t, zeta, route=route, N=N, **kw)
    pref = koornwinder_prefactor(space, t)
    phi, err = pref * val, pref * err
    if scalar:
        phi, labels, err = complex(phi[0]), labels[0], float(err[0])
    return (phi, labels, err) if with_info else phi
