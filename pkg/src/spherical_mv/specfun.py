"""Complex special functions: log-Gamma, Bessel J_m, Koornwinder's 2F1, L!!."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, RangeError
from .rootdata import RankOneSpace

_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
# B_{2k} / (2k (2k-1)), k = 1..10
_STIRLING = np.array(
    [
        b / (2 * k * (2 * k - 1))
        for k, b in enumerate(
            [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798, -174611 / 330],
            start=1,
        )
    ]
)


def _stirling(w):
    w = np.asarray(w, dtype=complex)
    inv = 1 / w
    inv2 = inv * inv
    corr = np.zeros_like(w)
    for coef in _STIRLING[::-1]:
        corr = corr * inv2 + coef
    return (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + corr * inv


def log_gamma(z):
    """Principal-branch log Gamma (analytic on C minus (-inf, 0]).

    Shifts the argument up to Re w >= 12 (or to Re w >= 0 when |Im z| >= 12)
    and applies the Stirling series with ten Bernoulli terms.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    poles = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if poles.any():
        bad = z[poles][0]
        raise DomainError(f"log_gamma: pole at z = {bad.real:g}", value=complex(bad))
    target = np.where(np.abs(z.imag) < 12, 12.0, 0.0)
    shifts = np.maximum(0, np.ceil(target - z.real)).astype(int)
    w = z + shifts
    out = _stirling(w)
    for k in range(int(shifts.max(initial=0))):
        mask = shifts > k
        out[mask] -= np.log(z[mask] + k)
    return complex(out[0]) if scalar else out


def gamma(z):
    return np.exp(log_gamma(z))


def rgamma(z):
    """1/Gamma(z), entire; zero at the poles of Gamma."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    poles = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    out = np.zeros_like(z)
    ok = ~poles
    if ok.any():
        out[ok] = np.exp(-log_gamma(z[ok]))
    return complex(out[0]) if scalar else out


def double_factorial(L: int) -> int:
    L = int(L)
    if L < -1:
        raise DomainError(f"double factorial undefined for L = {L}", value=L)
    out = 1
    while L > 1:
        out *= L
        L -= 2
    return out


# ---------------------------------------------------------------- Bessel J

BESSEL_MAX_ORDER = 64
BESSEL_IMAG_ENVELOPE = 60.0
_GL_NODES = 20
_CHUNK = 2_000_000


@lru_cache(maxsize=64)
def gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


@lru_cache(maxsize=256)
def _theta_grid(panels: int):
    x, w = gauss_legendre(_GL_NODES)
    edges = np.linspace(0.0, math.pi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    theta = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return theta, weights


def _log_abs_series_size(m, x):
    """Rough log of sum |terms| of the ascending series (~ log I_m(|z|))."""
    x = np.maximum(x, 1e-300)
    r = np.sqrt(m * m + x * x)
    return r - m * np.arcsinh(m / x) - 0.5 * np.log(2 * math.pi * np.maximum(r, 1.0))


def _bessel_series(orders, z):
    """Ascending series; returns array (len(z), len(orders))."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros((z.size, len(orders)), dtype=complex)
    h2 = (z / 2) ** 2
    for col, m in enumerate(orders):
        term = (z / 2) ** m / math.factorial(m)
        total = term.copy()
        k = 0
        while True:
            term = -term * h2 / ((k + 1) * (k + m + 1))
            total += term
            k += 1
            if np.all(np.abs(term) <= 1e-18 * np.maximum(np.abs(total), 1e-300)) or k > 400:
                break
        out[:, col] = total
    return out


def _bessel_quadrature(orders, z):
    """(1/pi) int_0^pi cos(m th - z sin th) d th by composite Gauss-Legendre."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros((z.size, len(orders)), dtype=complex)
    if z.size == 0:
        return out
    mmax = max(orders)
    scale = np.abs(z) + mmax
    # bucket by panel count (powers of two) to keep the work proportional
    panels = np.maximum(2, 2 ** np.ceil(np.log2(np.maximum(scale / 4, 1.0)))).astype(int)
    ords = np.asarray(orders, dtype=float)
    for P in np.unique(panels):
        idx_all = np.nonzero(panels == P)[0]
        theta, w = _theta_grid(int(P))
        mt = theta[:, None] * ords[None, :]
        cw = w[:, None] * np.cos(mt)
        sw = w[:, None] * np.sin(mt)
        sin_t = np.sin(theta)
        step = max(1, _CHUNK // theta.size)
        for start in range(0, idx_all.size, step):
            idx = idx_all[start : start + step]
            zi = z[idx]
            if not zi.imag.any():
                b = zi.real[:, None] * sin_t[None, :]
                out[idx] = (np.cos(b) @ cw + np.sin(b) @ sw) / math.pi
                continue
            e = np.exp(1j * zi[:, None] * sin_t[None, :])
            einv = 1 / e
            out[idx] = (0.5 * (e + einv) @ cw - 0.5j * (e - einv) @ sw) / math.pi
    return out


def bessel_j_orders(orders, z):
    """J_m(z) for each m in `orders` (nonnegative ints); shape z.shape + (len(orders),)."""
    orders = [int(m) for m in np.atleast_1d(orders)]
    if min(orders) < 0 or max(orders) > BESSEL_MAX_ORDER:
        raise RangeError(f"Bessel order outside 0..{BESSEL_MAX_ORDER}: {orders}")
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    flat = z.ravel()
    if flat.size and np.abs(flat.imag).max() > BESSEL_IMAG_ENVELOPE:
        raise RangeError(f"|Im z| exceeds envelope {BESSEL_IMAG_ENVELOPE}")
    x = np.abs(flat)
    # series where its roundoff (~ eps * sum|terms|) is no worse than quadrature's (~ eps * e^|Im z|)
    lo = min(orders)
    use_series = (x <= 2.0) | (_log_abs_series_size(lo, x) - np.abs(flat.imag) <= 3.0)
    out = np.empty((flat.size, len(orders)), dtype=complex)
    if use_series.any():
        out[use_series] = _bessel_series(orders, flat[use_series])
    if (~use_series).any():
        out[~use_series] = _bessel_quadrature(orders, flat[~use_series])
    return out.reshape(shape + (len(orders),))


def bessel_j(m: int, z):
    """J_m(z) for integer 0 <= m <= 64 and complex z with |Im z| <= 60."""
    scalar = np.ndim(z) == 0
    m = int(m)
    val = bessel_j_orders([m], z)[..., 0]
    return complex(val) if scalar else val


def bessel_j_integral(m: int, z, nodes: int = 4000):
    """Direct integral definition, dense fixed-order quadrature (test oracle path)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    panels = max(4, nodes // _GL_NODES)
    theta, w = _theta_grid(panels)
    vals = np.cos(m * theta[None, :] - z[:, None] * np.sin(theta)[None, :])
    return vals @ w / math.pi


# ------------------------------------------------------- Koornwinder 2F1


@dataclass(frozen=True)
class HypergeometricParams:
    a: float
    b: float
    c: float
    N: int
    z_max: float = 0.5

    @property
    def terminates(self) -> bool:
        return any(v <= 0 and float(v).is_integer() for v in (self.a, self.b))


def hypergeometric_coefficients(a, b, c, N):
    """(a)_k (b)_k / ((c)_k k!), k = 0..N-1."""
    out = np.empty(N)
    out[0] = 1.0
    for k in range(1, N):
        out[k] = out[k - 1] * (a + k - 1) * (b + k - 1) / ((c + k - 1) * k)
    return out


def koornwinder_params(space: RankOneSpace, z_max: float = 0.5, tol: float = 1e-16) -> HypergeometricParams:
    """2F1(1 - q/2, q/2; (n-1)/2; .) with N picked so the tail on [0, z_max) is below tol."""
    if not 0 < z_max <= 0.5:
        raise RangeError("z_max must lie in (0, 1/2]")
    a, b, c = 1 - space.q / 2, space.q / 2, (space.n - 1) / 2
    N = _truncation(a, b, c, z_max, tol)
    return HypergeometricParams(a, b, c, N, z_max)


def _truncation(a, b, c, z_max, tol):
    coef = 1.0
    for k in range(1, 2000):
        ratio = abs((a + k - 1) * (b + k - 1) / ((c + k - 1) * k))
        coef *= ratio
        if coef == 0.0:
            return k
        # coefficient ratios stay <= 1 once (a+b-c-1) < 0 dominates; tail is geometric in z_max
        nxt = abs((a + k) * (b + k) / ((c + k) * (k + 1)))
        if nxt <= 1.0 and coef * z_max**k / (1 - z_max) < tol:
            return k
    raise RangeError("2F1 truncation did not converge")


def gauss_2f1(params: HypergeometricParams, z):
    """Truncated Koornwinder hypergeometric series for 0 <= z < 1/2."""
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or np.any(z >= 0.5) or np.any(z > params.z_max):
        raise RangeError("2F1 argument outside [0, 1/2)")
    coef = hypergeometric_coefficients(params.a, params.b, params.c, params.N)
    out = np.zeros_like(z)
    for ck in coef[::-1]:
        out = out * z + ck
    return float(out) if scalar else out
