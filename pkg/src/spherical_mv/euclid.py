"""Compactly supported distributions sum_j c_j p_j(d) delta_{x_j} on R^n.

Fourier-Laplace convention: delta_x -> exp(-i<x, zeta>), d/dx_k -> -i zeta_k,
so that

    mu*(zeta) = sum_j c_j p_j(-i zeta) exp(-i <x_j, zeta>).

For finite sums of weighted deltas the invertibility constant A and the lower
bound |mu*(xi + i eta)| >= (|c_1|/M) (2 + |xi|)^(A |x_1|) along eta = t x_1,
t |x_1| = A log(2 + |xi|), are computed and checked on a grid.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfigurationError, DomainError

MIN_SEPARATION = 1e-9
A_SAFETY = 1.01
A_FLOOR = 1e-6


def _parse_index(key, dim):
    if isinstance(key, str):
        parts = [s for s in key.strip("()[] ").replace(" ", "").split(",") if s]
        idx = tuple(int(s) for s in parts)
    else:
        idx = tuple(int(s) for s in key)
    if len(idx) != dim or min(idx, default=0) < 0:
        raise ValueError(f"multi-index {key!r} does not match dimension {dim}")
    return idx


def _parse_complex(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex value must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


@dataclass(frozen=True)
class Term:
    point: np.ndarray
    poly: dict  # multi-index tuple -> complex coefficient
    weight: complex = 1.0


@dataclass(frozen=True)
class ExpPolyDistribution:
    dim: int
    terms: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not self.terms:
            raise ValueError("a distribution needs at least one term")
        pts = self.points
        if pts.shape[1] != self.dim:
            raise ValueError("point dimension mismatch")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if np.linalg.norm(pts[i] - pts[j]) <= MIN_SEPARATION:
                    raise ValueError(f"points {i} and {j} coincide")

    @property
    def points(self) -> np.ndarray:
        return np.array([t.point for t in self.terms], dtype=float).reshape(len(self.terms), self.dim)

    @property
    def weights(self) -> np.ndarray:
        return np.array([t.weight for t in self.terms], dtype=complex)

    @property
    def is_delta_sum(self) -> bool:
        zero = (0,) * self.dim
        return all(set(t.poly) <= {zero} for t in self.terms)

    @classmethod
    def deltas(cls, points, weights=None) -> "ExpPolyDistribution":
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[0] == 1 and np.ndim(points) == 1:
            pts = pts.T  # scalar points in R^1
        w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=complex)
        zero = (0,) * pts.shape[1]
        return cls(pts.shape[1], tuple(Term(p, {zero: 1.0}, complex(c)) for p, c in zip(pts, w)))

    @classmethod
    def from_dict(cls, doc: dict) -> "ExpPolyDistribution":
        dim = int(doc["dim"])
        terms = []
        for raw in doc["terms"]:
            point = np.asarray(raw["point"], dtype=float).reshape(dim)
            poly = raw.get("poly") or {",".join(["0"] * dim): 1}
            poly = {_parse_index(k, dim): _parse_complex(v) for k, v in poly.items()}
            terms.append(Term(point, poly, _parse_complex(raw.get("weight", 1.0))))
        return cls(dim, tuple(terms))

    @classmethod
    def from_json(cls, text: str) -> "ExpPolyDistribution":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {
                    "point": [float(x) for x in t.point],
                    "poly": {",".join(map(str, k)): [v.real, v.imag] for k, v in ((k, complex(v)) for k, v in t.poly.items())},
                    "weight": [complex(t.weight).real, complex(t.weight).imag],
                }
                for t in self.terms
            ],
        }


def _symbol(poly: dict, zeta):
    """p(-i zeta) for zeta of shape (G, n)."""
    out = np.zeros(zeta.shape[0], dtype=complex)
    w = -1j * zeta
    for idx, coef in poly.items():
        term = np.full(zeta.shape[0], complex(coef))
        for k, e in enumerate(idx):
            if e:
                term = term * w[:, k] ** e
        out += term
    return out


def _as_points(mu: ExpPolyDistribution, zeta):
    z = np.asarray(zeta, dtype=complex)
    scalar = z.ndim == 0 or (z.ndim == 1 and mu.dim > 1 and z.shape[0] == mu.dim)
    if mu.dim == 1 and z.ndim <= 1:
        scalar = z.ndim == 0
        z = z.reshape(-1, 1)
    else:
        z = np.atleast_2d(z)
    return z, scalar


def ft_exp_poly(mu: ExpPolyDistribution, zeta):
    """mu*(zeta); zeta is a complex vector, or an array of shape (G, n) (or (G,) when n = 1)."""
    z, scalar = _as_points(mu, zeta)
    out = np.zeros(z.shape[0], dtype=complex)
    for t in mu.terms:
        out += t.weight * _symbol(t.poly, z) * np.exp(-1j * (z @ t.point))
    return complex(out[0]) if scalar else out


def log_abs_ft(mu: ExpPolyDistribution, zeta):
    """log |mu*(zeta)| with the dominant exponential factored out (no overflow)."""
    z, scalar = _as_points(mu, zeta)
    expo = np.stack([-1j * (z @ t.point) for t in mu.terms])  # (N, G)
    shift = expo.real.max(axis=0)
    acc = np.zeros(z.shape[0], dtype=complex)
    for k, t in enumerate(mu.terms):
        acc += t.weight * _symbol(t.poly, z) * np.exp(expo[k] - shift)
    with np.errstate(divide="ignore"):
        out = shift + np.log(np.abs(acc))
    return float(out[0]) if scalar else out


# ------------------------------------------------------------- constant A


@dataclass(frozen=True)
class DeltaConstant:
    A: float
    lead: int  # index of x_1 (maximal norm)
    M: float
    weighted: bool
    lead_weight: float

    def bound_log(self, norm_x1, xi_norm):
        """log of (|c_1|/M) (2 + |xi|)^(A |x_1|)."""
        return math.log(self.lead_weight / self.M) + self.A * norm_x1 * np.log(2 + xi_norm)


def _normalize(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def deltafcn_constant_A(points, weights=None, safety: float = A_SAFETY) -> DeltaConstant:
    """Smallest admissible A for sum_j c_j delta_{x_j}, times `safety`.

    Unweighted (weights None or all 1): A > |x1| log N / (log 2 (|x1|^2 - <x_j, x1>)).
    Weighted: log N is replaced by log M + log|c_j| - log|c_1| with
    M = max(N + 1, 2 max|c_j| + 1).
    """
    pts = _normalize(points)
    N = len(pts)
    if N < 2:
        raise DomainError("N = 1 is a translation (trivially invertible); no constant needed", value=N)
    w = np.ones(N, dtype=complex) if weights is None else np.asarray(weights, dtype=complex)
    if np.any(w == 0):
        raise DomainError("weights must be nonzero")
    weighted = not np.allclose(w, 1.0)
    norms = np.linalg.norm(pts, axis=1)
    top = np.nonzero(norms >= norms.max() * (1 - 1e-14))[0]
    lead = int(top[np.argmax(np.abs(w[top]))])
    x1 = pts[lead]
    n1 = float(norms[lead])
    if n1 == 0:
        raise DegenerateConfigurationError("all points at the origin", value=n1)
    if weighted:
        M = max(N + 1.0, 2 * float(np.abs(w).max()) + 1)
    else:
        M = float(N)
    A = 0.0
    for j in range(N):
        if j == lead:
            continue
        gap = n1 * n1 - float(pts[j] @ x1)
        if gap <= 1e-12 * n1 * n1:
            raise DegenerateConfigurationError(
                f"<x_{j}, x_1> = |x_1|^2: the maximal-norm point is not separated", value=j
            )
        num = math.log(M) + (math.log(abs(w[j])) - math.log(abs(w[lead])) if weighted else 0.0)
        A = max(A, n1 * num / (math.log(2) * gap))
    A = max(safety * A, A_FLOOR)
    return DeltaConstant(A, lead, M, weighted, float(abs(w[lead])))


@dataclass(frozen=True)
class DeltaBoundVerdict:
    passed: bool
    A: float
    xi: np.ndarray
    log_lhs: np.ndarray
    log_rhs: np.ndarray

    @property
    def log_margin(self) -> np.ndarray:
        return self.log_lhs - self.log_rhs

    @property
    def worst(self):
        i = int(np.argmin(self.log_margin))
        return self.xi[i], float(self.log_lhs[i]), float(self.log_rhs[i])


def verify_delta_bound(points, weights=None, xi_grid=None, const: DeltaConstant | None = None,
                       exponent_scale: float = 1.0) -> DeltaBoundVerdict:
    """Check |mu*(xi + i t x1)| >= (|c1|/M)(2+|xi|)^(A|x1| * exponent_scale) in log form."""
    pts = _normalize(points)
    mu = ExpPolyDistribution.deltas(pts, weights)
    const = deltafcn_constant_A(pts, weights) if const is None else const
    xi = np.asarray(xi_grid if xi_grid is not None else np.linspace(0, 100, 201), dtype=float)
    if xi.ndim == 1:
        if mu.dim == 1:
            xi = xi[:, None]
        else:
            raise ValueError("xi_grid must have shape (G, n) for n > 1")
    x1 = pts[const.lead]
    n1 = float(np.linalg.norm(x1))
    xin = np.linalg.norm(xi, axis=1)
    t = const.A * np.log(2 + xin) / n1
    zeta = xi + 1j * t[:, None] * x1[None, :]
    lhs = log_abs_ft(mu, zeta)
    rhs = math.log(const.lead_weight / const.M) + exponent_scale * const.A * n1 * np.log(2 + xin)
    return DeltaBoundVerdict(bool(np.all(lhs >= rhs)), const.A, xi, lhs, rhs)
