"""M_star and C_star across spaces and eta.

    python3 scripts/find_m_sweep.py --out results/find_m.csv

Each row also runs the lower-bound check at M_star + 1 and its 100x
inversion.
"""
from __future__ import annotations

import argparse
import csv
import pathlib

import numpy as np

from spherical_mv import hcseries
from spherical_mv.rootdata import space_from_name


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spaces", default="H2,H3,H4,CH2")
    ap.add_argument("--eta", default="0.05,0.1,0.2")
    ap.add_argument("--H0", type=float, default=0.5)
    ap.add_argument("--out", default="results/find_m.csv")
    args = ap.parse_args()

    xi = np.linspace(0, 200, 401)
    rows = []
    for name in args.spaces.split(","):
        sp = space_from_name(name)
        for eta in (float(s) for s in args.eta.split(",")):
            res = hcseries.find_M(sp, eta, args.H0)
            t = res.M_star + 1
            ok = hcseries.lower_bound_check(sp, eta, t, xi, res.C_star)
            inv = hcseries.lower_bound_check(sp, eta, t, xi, 100 * res.C_star)
            rows.append([name, eta, res.M_star, f"{res.C_star:.4g}", f"{res.m1:.4g}", f"{res.m2:.4g}",
                         f"{res.K_H0:.4g}", ok.passed, f"{ok.margin.min():.3g}", not inv.passed])
            print(*rows[-1], sep="\t")
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["space", "eta", "M_star", "C_star", "m1", "m2", "K_H0", "check_passed", "min_margin",
                    "inversion_fails"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
