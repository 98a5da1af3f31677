"""Freeze high-precision reference values of I(lambda) for the remainder-decay check.

The double-precision quadrature oracle has an absolute noise floor near 1e-13,
which is above the N = 5 series remainder at large lambda.  These values come
from mpmath tanh-sinh quadrature at 30 digits, split at half-periods of the
cosine, with cosh t - cosh s in product form so the endpoint singularity
keeps full precision.  Stored as package data.

    python3 scripts/freeze_reference.py
"""
from __future__ import annotations

import json
import pathlib
import time

import mpmath as mp

from spherical_mv.rootdata import space_from_name

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "spherical_mv" / "data" / "remainder_reference.json"
SPACES = ("H2", "CH2")
T = 1.0
LAMBDAS = [float(v) for v in range(20, 201, 2)]


def reference_I(p: int, q: int, t: float, lam: float, dps: int = 30) -> float:
    with mp.workdps(dps):
        n = p + q + 1
        t, lam = mp.mpf(t), mp.mpf(lam)
        ch = mp.cosh(t)
        a, b, c = 1 - mp.mpf(q) / 2, mp.mpf(q) / 2, mp.mpf(n - 1) / 2

        def f(s):
            # product form: ch - cosh(s) cancels at nodes next to s = t
            Z = 2 * mp.sinh((t + s) / 2) * mp.sinh((t - s) / 2)
            return mp.cos(lam * s) * Z ** (mp.mpf(n - 3) / 2) * mp.hyp2f1(a, b, c, Z / (2 * ch))

        pieces = int(lam * t / mp.pi) + 2
        return float(mp.quad(f, mp.linspace(0, t, pieces + 1)))


def main():
    doc = {"t": T, "lambda": LAMBDAS, "dps": 30, "values": {}}
    for name in SPACES:
        sp = space_from_name(name)
        t0 = time.time()
        doc["values"][name] = [reference_I(sp.p, sp.q, T, lam) for lam in LAMBDAS]
        print(f"{name}: {len(LAMBDAS)} points in {time.time() - t0:.1f}s")
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
