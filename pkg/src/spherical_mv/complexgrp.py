"""Spherical functions of complex G of type A_l.

Vectors live in sum-zero coordinates of R^(l+1) with the dot product; roots
e_i - e_j, rho = sum of positive roots, s.lam(H) = <s lam, H>.

    phi_lam(exp H) = c pi(rho)/pi(i lam) * sum_s det(s) e^{i<s lam, H>} / sum_s det(s) e^{<s rho, H>}

On walls (Delta_0 = {alpha : alpha(H) = 0} nonempty) the W_0 limit formula
is used with rho_0 = sum of the positive roots of Delta_0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .rootdata import WeylGroupA, pi_product, to_sum_zero, weyl_group_A

REGULARITY_TOL = 1e-12
# a root with |alpha(lam)| below this counts as a zero of pi(i lam): the value is taken as a limit
PI_ZERO_TOL = 1e-3
RICHARDSON_EPS = (1e-4, 5e-5)
CIRCLE_NODES = 128


def _direction(dim: int) -> np.ndarray:
    """Fixed pseudorandom sum-zero direction, away from every wall."""
    v = np.array([math.sin(1.7 * (k + 1) ** 1.3) for k in range(dim)])
    v -= v.mean()
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class ComplexGroupPoint:
    W: WeylGroupA
    H: np.ndarray
    lam: np.ndarray

    @classmethod
    def make(cls, W: WeylGroupA, H, lam) -> "ComplexGroupPoint":
        H = to_sum_zero(W, H).real.astype(float)
        lam = to_sum_zero(W, lam)
        return cls(W, H, lam)

    @property
    def wall_roots(self) -> tuple:
        """Delta_0^+ as index pairs."""
        return tuple((i, j) for i, j in self.W.positive_roots if abs(self.H[i] - self.H[j]) < REGULARITY_TOL)

    @property
    def regular(self) -> bool:
        return not self.wall_roots

    @property
    def stabilizer_order(self) -> int:
        """|W_0| = prod of factorials of the blocks of equal coordinates."""
        order, used = 1, [False] * self.W.dim
        for i in range(self.W.dim):
            if used[i]:
                continue
            block = [j for j in range(self.W.dim) if abs(self.H[j] - self.H[i]) < REGULARITY_TOL]
            for j in block:
                used[j] = True
            order *= math.factorial(len(block))
        return order


def weyl_denominator(W: WeylGroupA, H, route: str = "product") -> float:
    """sum_s det(s) e^{<s rho, H>}  (route 'sum')  or  prod_{alpha>0} (e^{alpha(H)} - e^{-alpha(H)})."""
    H = to_sum_zero(W, H).real
    if route == "sum":
        if W.rank > 4:
            raise DomainError("sum route enumerates |W|; limited to l <= 4", value=W.rank)
        # long double accumulation: the alternating sum cancels near walls
        rho = W.rho.astype(np.longdouble)
        Hl = H.astype(np.longdouble)
        terms = [sg * np.exp(np.dot(W.act(s, rho), Hl)) for s, sg in zip(W.elements, W.signs)]
        return float(np.sum(np.array(terms, dtype=np.longdouble)))
    if route == "product":
        return math.prod(2 * math.sinh(H[i] - H[j]) for i, j in W.positive_roots)
    raise ValueError(f"unknown route {route!r}")


def _alternating_sum(W: WeylGroupA, lam, H, weight=None):
    """sum_s det(s) w(s lam) e^{i<s lam, H>}, lam shape (..., dim)."""
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros(lam.shape[:-1], dtype=complex)
    for s, sg in zip(W.elements, W.signs):
        sl = np.empty_like(lam)
        sl[..., list(s)] = lam
        term = np.exp(1j * (sl @ H))
        if weight is not None:
            term = term * weight(sl)
        out += sg * term
    return out


def _pi(roots, vec):
    vec = np.asarray(vec, dtype=complex)
    out = np.ones(vec.shape[:-1], dtype=complex)
    for i, j in roots:
        out = out * (vec[..., i] - vec[..., j])
    return out


def _raw_regular(W: WeylGroupA, H, lam):
    num = _alternating_sum(W, lam, H)
    return _pi(W.positive_roots, W.rho).real / _pi(W.positive_roots, 1j * np.asarray(lam)) * num / weyl_denominator(W, H)


def _raw_nonregular(W: WeylGroupA, H, lam, wall, order):
    rho0 = np.zeros(W.dim)
    for i, j in wall:
        rho0[i] += 1
        rho0[j] -= 1
    rest = [r for r in W.positive_roots if r not in wall]
    den = math.prod(2 * math.sinh(H[i] - H[j]) for i, j in rest)
    num = _alternating_sum(W, lam, H, weight=lambda sl: _pi(wall, 1j * sl))
    pref = _pi(W.positive_roots, W.rho).real / (order * _pi(wall, rho0).real)
    return pref * num / (_pi(W.positive_roots, 1j * np.asarray(lam)) * den)


@lru_cache(maxsize=8)
def normalization(rank: int) -> float:
    """c with phi_{-i rho} = 1, calibrated at a fixed regular H."""
    W = weyl_group_A(rank)
    H = 0.37 * W.rho / np.linalg.norm(W.rho) + 0.05 * _direction(W.dim)
    return float(1.0 / _raw_regular(W, H, -1j * W.rho).real)


def _circle_mean(fn, W: WeylGroupA, lam, d, nodes: int = CIRCLE_NODES):
    """(value, error) of z -> fn(lam + z d) at z = 0 as its mean over a circle.

    The radius makes prod |z (d_i - d_j)| over the vanishing roots O(1), so
    pi(i lam) stays far from the roundoff regime, and keeps the circle away
    from the other zeros of pi along d.
    """
    dd = np.array([d[i] - d[j] for i, j in W.positive_roots])
    dl = np.array([lam[i] - lam[j] for i, j in W.positive_roots])
    van = np.abs(dl) < PI_ZERO_TOL
    unit = math.exp(-np.mean(np.log(np.abs(dd[van]))))
    z = np.abs(dl[~van] / dd[~van])
    cands = unit * np.linspace(0.5, 1.5, 21)
    r = cands[np.argmax([np.min(np.abs(z - c)) if z.size else c for c in cands])]
    ang = np.exp(2j * math.pi * (np.arange(nodes) + 0.5) / nodes)

    def mean(rad):
        g = fn(lam[None, :] + rad * ang[:, None] * d[None, :])
        return g.mean(), g[::2].mean()

    full, half = mean(r)
    other, _ = mean(0.8 * r)
    return full, max(abs(full - half), abs(full - other))


def _with_limit(fn, W: WeylGroupA, lam):
    """fn(lam) with the removable zeros of pi(i lam) handled.

    One vanishing root: +-eps averaging and Richardson.  Several: the
    eps-offsets lose about eps_mach / eps^k to cancellation, so the entire
    function is averaged over a circle in a complex offset instead.
    """
    lam = np.asarray(lam, dtype=complex)
    single = lam.ndim == 1
    lam2 = np.atleast_2d(lam)
    count = np.zeros(lam2.shape[0], dtype=int)
    for i, j in W.positive_roots:
        count += np.abs(lam2[:, i] - lam2[:, j]) < PI_ZERO_TOL
    val = np.empty(lam2.shape[0], dtype=complex)
    err = np.zeros(lam2.shape[0])
    generic, simple, multiple = count == 0, count == 1, count > 1
    if generic.any():
        val[generic] = fn(lam2[generic])
    d = _direction(W.dim)
    if simple.any():
        g = [0.5 * (fn(lam2[simple] + e * d) + fn(lam2[simple] - e * d)) for e in RICHARDSON_EPS]
        # g(eps) = g0 + a eps^2 + ...
        e1, e2 = RICHARDSON_EPS
        r = (e1**2 * g[1] - e2**2 * g[0]) / (e1**2 - e2**2)
        val[simple], err[simple] = r, np.abs(r - g[1])
    for k in np.nonzero(multiple)[0]:
        val[k], err[k] = _circle_mean(fn, W, lam2[k], d)
    if single:
        return complex(val[0]), float(err[0])
    return val, err


def phi_complex_regular(cp: ComplexGroupPoint, with_error: bool = False):
    """phi_lam(exp H) for regular H."""
    if not cp.regular:
        raise DomainError("H lies on a wall; use phi_complex_nonregular", value=cp.wall_roots)
    W, H = cp.W, cp.H
    c = normalization(W.rank)
    val, err = _with_limit(lambda lam: c * _raw_regular(W, H, lam), W, cp.lam)
    return (val, err) if with_error else val


def phi_complex_nonregular(cp: ComplexGroupPoint, with_error: bool = False):
    """phi_lam(exp H) from the W_0 limit formula (reduces to the regular one off walls)."""
    W, H = cp.W, cp.H
    wall, order = cp.wall_roots, cp.stabilizer_order
    c = normalization(W.rank)
    val, err = _with_limit(lambda lam: c * _raw_nonregular(W, H, lam, wall, order), W, cp.lam)
    return (val, err) if with_error else val


def phi_complex(W: WeylGroupA, H, lam, with_error: bool = False):
    cp = ComplexGroupPoint.make(W, H, lam)
    if cp.regular:
        return phi_complex_regular(cp, with_error)
    return phi_complex_nonregular(cp, with_error)


def regular_limit(W: WeylGroupA, H, lam, direction=None, deltas=(4e-3, 2e-3, 1e-3)):
    """Limit of the regular formula along H + delta*direction, delta -> 0 (quadratic extrapolation)."""
    H = to_sum_zero(W, H).real
    v = _direction(W.dim) if direction is None else to_sum_zero(W, direction).real
    vals = [phi_complex_regular(ComplexGroupPoint.make(W, H + dl * v, lam)) for dl in deltas]
    # Neville at delta = 0
    d = np.asarray(deltas, dtype=float)
    table = list(vals)
    for m in range(1, len(d)):
        table = [(d[k + m] * table[k] - d[k] * table[k + 1]) / (d[k + m] - d[k]) for k in range(len(table) - 1)]
    return complex(table[0])


def a1_point(t: float, lam_scalar) -> ComplexGroupPoint:
    """A_1 point matching the rank-one chart: alpha(H) = t, <lam, alpha_0> = lam_scalar."""
    W = weyl_group_A(1)
    return ComplexGroupPoint.make(W, [t / 2, -t / 2], [lam_scalar, -lam_scalar])


__all__ = [
    "ComplexGroupPoint",
    "a1_point",
    "normalization",
    "phi_complex",
    "phi_complex_nonregular",
    "phi_complex_regular",
    "pi_product",
    "regular_limit",
    "weyl_denominator",
]
