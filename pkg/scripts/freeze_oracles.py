"""Freeze independent reference values used by the unit tests.

Everything here comes from mpmath at 30 digits (or dense numpy sampling for
the disk supremum), never from the package under test.  Output:
tests/data/derived.json.

    python3 scripts/freeze_oracles.py
"""
from __future__ import annotations

import json
import pathlib

import mpmath as mp
import numpy as np

from spherical_mv.rootdata import NAMED_SPACES

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "derived.json"
mp.mp.dps = 30


def cx(z):
    z = complex(z)
    return [z.real, z.imag]


def jacobi_phi(p, q, t, lam):
    """phi_lam(exp tH) = 2F1((rho + i lam)/2, (rho - i lam)/2; n/2; -sinh^2 t)."""
    rho = mp.mpf(p) / 2 + q
    lam = mp.mpc(lam)
    return mp.hyp2f1((rho + 1j * lam) / 2, (rho - 1j * lam) / 2, mp.mpf(p + q + 1) / 2, -mp.sinh(t) ** 2)


def koornwinder_I(p, q, t, zeta):
    n = p + q + 1
    t, zeta = mp.mpf(t), mp.mpc(zeta)
    ch = mp.cosh(t)
    a, b, c = 1 - mp.mpf(q) / 2, mp.mpf(q) / 2, mp.mpf(n - 1) / 2

    def f(s):
        Z = 2 * mp.sinh((t + s) / 2) * mp.sinh((t - s) / 2)
        return mp.cos(zeta * s) * Z ** (mp.mpf(n - 3) / 2) * mp.hyp2f1(a, b, c, Z / (2 * ch))

    pieces = int(abs(zeta.real) * t / mp.pi) + 2
    return mp.quad(f, mp.linspace(0, t, pieces + 1))


def calI(m, t, zeta):
    t, zeta = mp.mpf(t), mp.mpc(zeta)
    f = lambda s: mp.cos(zeta * s) * (2 * mp.sinh((t + s) / 2) * mp.sinh((t - s) / 2)) ** m
    pieces = int(abs(zeta.real) * t / mp.pi) + 2
    return 2 * mp.quad(f, mp.linspace(0, t, pieces + 1))


def c_function(p, q, lam):
    z = 1j * mp.mpc(lam)
    c0 = 2 ** (mp.mpf(p) / 2 + q) * mp.gamma(mp.mpf(p + q + 1) / 2)
    return c0 * 2 ** (-z) * mp.gamma(z) / (mp.gamma((mp.mpf(p) / 2 + q + z) / 2) * mp.gamma((mp.mpf(p) / 2 + 1 + z) / 2))


def complex_limit(H, lam):
    """phi_lam(exp H) for complex A_l from the regular formula (c = 1), 700 digits.

    Walls of H and zeros of pi(i lam) are approached along independent
    offsets of size 1e-25, which moves the value by far less than 1e-16.
    """
    import itertools

    with mp.workdps(700):
        dim = len(H)
        h_off = [mp.mpf(1e-25) * mp.sqrt(k + 2) for k in range(dim)]
        l_off = [mp.mpf(1e-25) * mp.cbrt(k + 3) for k in range(dim)]
        H = [mp.mpf(h) + o - mp.fsum(h_off) / dim for h, o in zip(H, h_off)]
        lam = [mp.mpc(complex(v)) + o - mp.fsum(l_off) / dim for v, o in zip(lam, l_off)]
        rho = [dim - 1 - 2 * k for k in range(dim)]
        roots = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
        num = den = 0
        for perm in itertools.permutations(range(dim)):
            sign = (-1) ** sum(perm[i] > perm[j] for i, j in roots)
            num += sign * mp.exp(1j * mp.fsum(lam[perm[k]] * H[k] for k in range(dim)))
            den += sign * mp.exp(mp.fsum(rho[perm[k]] * H[k] for k in range(dim)))
        pr = mp.fprod(rho[i] - rho[j] for i, j in roots)
        pl = mp.fprod(1j * (lam[i] - lam[j]) for i, j in roots)
        return complex(pr / pl * num / den)


def main():
    doc = {}
    doc["log_gamma"] = [
        {"z": cx(z), "value": cx(mp.loggamma(z))}
        for z in (0.5, 1.0, 2.5, 10.0, 0.1 + 0.2j, -2.5 + 0.5j, 3 - 7j, -40.3 + 1e-3j, 500 + 300j, 1e3j)
    ]
    doc["bessel_j"] = [
        {"m": m, "z": cx(z), "value": cx(mp.besselj(m, z))}
        for m, z in ((0, 1.0), (1, 2.5), (5, 0.3), (2, 19.5), (2, 20.5), (7, 35.0), (12, 150.0), (30, 41.0),
                     (64, 80.0), (3, 4 + 2j), (1, 25 - 6j), (10, 60 + 9.5j), (0, 1e-8), (6, 200.0 + 0.5j))
    ]
    with mp.workdps(30):
        z, m = mp.mpf(3), 2
        lhs = mp.quad(lambda th: mp.cos(z * mp.sin(th)) * mp.cos(th) ** (2 * m), [0, mp.pi / 2])
    doc["bessel_integral_identity"] = {"m": 2, "z": 3.0, "lhs": float(lhs)}
    doc["gauss_2f1"] = [
        {"q": q, "n": n, "z": z, "value": float(mp.hyp2f1(1 - mp.mpf(q) / 2, mp.mpf(q) / 2, mp.mpf(n - 1) / 2, z))}
        for q, n, z in ((1, 4, 0.25), (1, 4, 0.49), (3, 8, 0.3), (7, 16, 0.45), (2, 7, 0.2))
    ]
    doc["integral_I"] = [
        {"space": name, "t": t, "zeta": cx(zeta), "value": cx(koornwinder_I(*NAMED_SPACES[name], t, zeta))}
        for name, t, zeta in (("H2", 1.0, 5.0), ("H2", 1.0, 40.0), ("H4", 1.0, 40.0), ("CH2", 1.0, 3 + 0.5j),
                              ("HH2", 0.7, 2.2), ("OH2", 0.5, 4.0), ("H5", 1.0, 10.0), ("CH3", 3.0, 1 - 2j))
    ]
    doc["calI"] = [
        {"m": m, "t": t, "zeta": cx(zeta), "value": cx(calI(m, t, zeta))}
        for m, t, zeta in ((4, 0.8, 7.3), (12, 1.0, 200.0), (12, 0.2, 3.0), (6, 2.0, 15 + 1.5j), (3, 1.0, 2j),
                           (9, 0.5, 40.0), (1, 1.0, 0.0))
    ]
    doc["phi"] = [
        {"space": name, "t": t, "lam": cx(lam), "value": cx(jacobi_phi(*NAMED_SPACES[name], t, lam))}
        for name in NAMED_SPACES
        for t, lam in ((0.5, 0.7), (1.0, 3.2 + 0.4j), (2.0, 11.0), (1.5, 25.0 - 0.5j))
    ]
    doc["c_function"] = [
        {"space": name, "lam": cx(lam), "value": cx(c_function(*NAMED_SPACES[name], lam))}
        for name in ("H2", "H3", "H4", "CH2", "HH2")
        for lam in (0.7, 3.0 - 0.1j, 50.0 - 0.1j, 900.0 + 2j)
    ]
    doc["complex_limit"] = [
        {"H": list(H), "lam": [cx(v) for v in lam], "value": cx(complex_limit(H, lam))}
        for H, lam in (
            ((0.9, -0.2, -0.7), (1, 1, -2)),
            ((0.9, -0.2, -0.7), (0, 0, 0)),
            ((0.4, 0.4, -0.8), (1.3, 1.3, -2.6)),
            ((1.1, 0.3, -0.5, -0.9), (0.5, 0.5, 0.5, -1.5)),
            ((1.1, 0.3, -0.5, -0.9), (1 + 0.2j, 1 + 0.2j, -1 - 0.2j, -1 - 0.2j)),
            ((0.5, 0.5, -0.2, -0.8), (0.7, 0.7, -0.7, -0.7)),
            ((1.2, 0.6, 0.1, -0.8, -1.1), (1, 1, 0, -1, -1)),
            ((1.2, 0.6, 0.1, -0.8, -1.1), (0.4, 0.4, 0.4, 0.4, -1.6)),
            ((0.6, 0.6, 0.6, -0.9, -0.9), (0, 0, 0, 0, 0)),
        )
    ]
    # dense boundary sampling of sin(z)/z on |z - pi| = 1
    ang = 2 * np.pi * np.arange(100_000) / 100_000
    zz = np.pi + np.exp(1j * ang)
    doc["disk_sup_sinc"] = {"center": float(np.pi), "radius": 1.0, "value": float(np.abs(np.sin(zz) / zz).max())}
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
