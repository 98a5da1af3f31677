"""Disagreement between the fast routes and the quadrature oracle.

    python3 scripts/route_agreement.py --out results/route_agreement.csv

For every named space and t, reports max |fast - oracle| / (1 + |oracle|)
for the recurrence (odd n), the Bessel series (even n, |lam| >= 20) and the
Harish-Chandra expansion (t >= 1).
"""
from __future__ import annotations

import argparse
import csv
import pathlib

import numpy as np

from spherical_mv import hcseries, oracle, rankone
from spherical_mv.rootdata import NAMED_SPACES, space_from_name


def rel(a, b):
    return float(np.max(np.abs(a - b) / (1 + np.abs(b))))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", default="0.5,1,2,3")
    ap.add_argument("--N", type=int, default=6)
    ap.add_argument("--out", default="results/route_agreement.csv")
    args = ap.parse_args()

    lam_lo = np.linspace(0.1, 20, 60)
    lam_hi = np.linspace(20, 200, 91)
    rows = []
    for name in NAMED_SPACES:
        sp = space_from_name(name)
        for t in (float(s) for s in args.t.split(",")):
            lam = lam_hi if not sp.is_odd else np.concatenate([lam_lo, lam_hi])
            ref_I = oracle.integral_I(sp, t, lam)
            route = "recurrence" if sp.is_odd else "series"
            fast, _, _ = rankone.koornwinder_I(sp, t, lam, route=route, N=args.N)
            rows.append([name, t, route, f"{rel(fast, ref_I):.3e}"])
            if t >= 1:
                ref = rankone.koornwinder_phi(sp, t, lam_lo, route="oracle")
                rows.append([name, t, "hc", f"{rel(hcseries.phi_hc(sp, t, lam_lo), ref):.3e}"])
    for r in rows:
        print(*r, sep="\t")
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["space", "t", "route", "max_rel_dev"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
