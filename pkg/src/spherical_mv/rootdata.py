"""Root data for rank-one spaces and type-A complex groups.

Rank-one chart: the inner product on a* is scaled so that |alpha| = 1 and the
flat coordinate is t = alpha(H).  In this chart rho = p/2 + q and every
pairing <mu, lambda> with mu = k*alpha is the product k*lambda.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class RankOneSpace:
    p: int
    q: int
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not isinstance(self.q, (int, np.integer)):
            raise TypeError("multiplicities must be integers")
        if self.p < 1:
            raise ValueError(f"p = m_alpha must be >= 1, got {self.p}")
        if self.q < 0:
            raise ValueError(f"q = m_2alpha must be >= 0, got {self.q}")

    @property
    def n(self) -> int:
        return self.p + self.q + 1

    @property
    def rho(self) -> float:
        return self.p / 2 + self.q

    @property
    def ell(self) -> int:
        """Index with n - 3 = 2*ell (odd n) or n - 2 = 2*ell (even n)."""
        return (self.n - 3) // 2 if self.n % 2 else (self.n - 2) // 2

    @property
    def is_odd(self) -> bool:
        return self.n % 2 == 1

    def label(self) -> str:
        return self.name or f"(p={self.p},q={self.q})"


def build_rank_one(p: int, q: int) -> RankOneSpace:
    return RankOneSpace(int(p), int(q))


def real_hyperbolic(n: int) -> RankOneSpace:
    """Real hyperbolic space H^n, n >= 2."""
    if n < 2:
        raise ValueError("real hyperbolic space needs n >= 2")
    return RankOneSpace(n - 1, 0, f"H{n}")


def complex_hyperbolic(k: int) -> RankOneSpace:
    """Complex hyperbolic space CH^k (real dimension 2k), k >= 2."""
    if k < 2:
        raise ValueError("CH^k needs k >= 2 (CH^1 is H^2)")
    return RankOneSpace(2 * k - 2, 1, f"CH{k}")


def quaternionic_hyperbolic(k: int) -> RankOneSpace:
    """Quaternionic hyperbolic space HH^k (real dimension 4k), k >= 2."""
    if k < 2:
        raise ValueError("HH^k needs k >= 2")
    return RankOneSpace(4 * k - 4, 3, f"HH{k}")


def octonionic_plane() -> RankOneSpace:
    return RankOneSpace(8, 7, "OH2")


NAMED_SPACES = {
    "H2": (1, 0),
    "H3": (2, 0),
    "H4": (3, 0),
    "H5": (4, 0),
    "CH2": (2, 1),
    "CH3": (4, 1),
    "HH2": (4, 3),
    "OH2": (8, 7),
}


def space_from_name(name: str) -> RankOneSpace:
    """Resolve a registry name ("H3", "CH2", ...) or a "p,q" pair."""
    key = name.strip().upper()
    if key in NAMED_SPACES:
        p, q = NAMED_SPACES[key]
        return RankOneSpace(p, q, key)
    if "," in key:
        p, q = (int(s) for s in key.strip("()").split(","))
        return build_rank_one(p, q)
    raise KeyError(f"unknown space {name!r}; known: {', '.join(NAMED_SPACES)} or 'p,q'")


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class WeylGroupA:
    """Weyl group S_{l+1} of A_l acting on sum-zero vectors of R^{l+1}."""

    rank: int
    elements: tuple = field(repr=False)
    signs: tuple = field(repr=False)
    positive_roots: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        return self.rank + 1

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, perm, vec):
        """(s.v)_{perm[i]} = v_i, i.e. s permutes coordinates."""
        vec = np.asarray(vec)
        out = np.empty_like(vec)
        out[list(perm)] = vec
        return out

    @property
    def rho(self) -> np.ndarray:
        """Sum of the positive roots (not the half sum)."""
        l = self.rank
        return np.array([l - 2 * i for i in range(l + 1)], dtype=float)

    def compose(self, a, b):
        """Permutation of (a o b) as index tuples."""
        return tuple(a[b[i]] for i in range(len(a)))


def weyl_group_A(l: int) -> WeylGroupA:
    if not 1 <= l <= 5:
        raise ValueError(f"rank l must be in 1..5, got {l}")
    perms = tuple(itertools.permutations(range(l + 1)))
    signs = tuple(_perm_sign(p) for p in perms)
    roots = tuple((i, j) for i in range(l + 1) for j in range(i + 1, l + 1))
    return WeylGroupA(l, perms, signs, roots)


def to_sum_zero(W: WeylGroupA, lam) -> np.ndarray:
    """Accept l+1 coordinates (must sum to ~0) or l free ones (last fixed by sum zero)."""
    lam = np.asarray(lam, dtype=complex)
    if lam.shape[-1] == W.dim:
        if abs(lam.sum()) > 1e-9 * max(1.0, np.abs(lam).max()):
            raise ValueError("type-A vectors must have coordinates summing to zero")
        return lam
    if lam.shape[-1] == W.rank:
        return np.append(lam, -lam.sum())
    raise ValueError(f"expected {W.rank} or {W.dim} coordinates, got {lam.shape[-1]}")


def pi_product(W: WeylGroupA, lam) -> complex:
    """prod_{i<j} (lam_i - lam_j)."""
    lam = to_sum_zero(W, lam)
    out = 1.0 + 0j
    for i, j in W.positive_roots:
        out *= lam[i] - lam[j]
    return complex(out)


def lattice_norm(k: int) -> float:
    """|k alpha| in the |alpha| = 1 chart."""
    if k < 0:
        raise ValueError("lattice points k*alpha need k >= 0")
    return float(k)


def factorial_product(sizes) -> int:
    return math.prod(math.factorial(s) for s in sizes)
