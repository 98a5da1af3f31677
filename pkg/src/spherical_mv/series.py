"""Truncated formal power series on coefficient arrays (index = degree)."""
from __future__ import annotations

import numpy as np


def mul(a, b, n=None):
    a, b = np.asarray(a), np.asarray(b)
    n = min(len(a), len(b)) if n is None else n
    return np.convolve(a, b)[:n]


def inverse(a, n=None):
    """1/a truncated to n terms; a[0] must be nonzero."""
    a = np.asarray(a)
    n = len(a) if n is None else n
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    out = np.zeros(n, dtype=np.result_type(a, float))
    out[0] = 1 / a[0]
    for k in range(1, n):
        m = min(k, len(a) - 1)
        out[k] = -sum(a[j] * out[k - j] for j in range(1, m + 1)) / a[0]
    return out


def power(a, alpha, n=None):
    """a**alpha for real alpha, with a[0] = 1.

    Uses the J.C.P. Miller recurrence for g = f^alpha:
    k f0 g_k = sum_{j=1}^k ((alpha + 1) j - k) f_j g_{k-j}.
    """
    a = np.asarray(a)
    n = len(a) if n is None else n
    if a[0] != 1:
        raise ValueError("power() expects a normalized series with a[0] == 1")
    out = np.zeros(n, dtype=np.result_type(a, float))
    out[0] = 1.0
    for k in range(1, n):
        acc = 0.0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += ((alpha + 1) * j - k) * a[j] * out[k - j]
        out[k] = acc / k
    return out


def binomial_power(a, alpha, n=None):
    """a**alpha by binomial composition sum_r C(alpha, r) (a - 1)^r.

    Slower than power() but an independent route; a[0] must be 1.
    """
    a = np.asarray(a, dtype=float)
    n = len(a) if n is None else n
    if a[0] != 1:
        raise ValueError("binomial_power() expects a[0] == 1")
    h = np.zeros(n)
    h[1 : min(n, len(a))] = a[1 : min(n, len(a))]
    out = np.zeros(n)
    out[0] = 1.0
    term = np.zeros(n)
    term[0] = 1.0
    coeff = 1.0
    for r in range(1, n):
        term = mul(term, h, n)
        coeff *= (alpha - r + 1) / r
        out += coeff * term
    return out


def binomial_series(alpha, n, step=1, sign=-1.0):
    """Coefficients of (1 + sign*x^step)^alpha up to degree n-1."""
    out = np.zeros(n)
    coeff = 1.0
    for r in range(0, (n - 1) // step + 1):
        if r > 0:
            coeff *= (alpha - r + 1) / r
        out[r * step] = coeff * sign**r
    return out
