"""Slow-decrease certificates over spaces and radii.

    python3 scripts/certify_sweep.py --spaces H2,H3,H4,CH2 --t 0.5,1,2 --out results/certify

Writes one JSON report per (space, t) and a summary CSV with the fitted
constants next to the expected exponent.
"""
from __future__ import annotations

import argparse
import csv
import pathlib
import time

from spherical_mv import certifier
from spherical_mv.rootdata import space_from_name


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spaces", default="H2,H3,H4,CH2")
    ap.add_argument("--t", default="0.5,1,2")
    ap.add_argument("--xi-max", type=float, default=400.0)
    ap.add_argument("--xi-step", type=float, default=2.0)
    ap.add_argument("--samples", type=int, default=certifier.DEFAULT_SAMPLES)
    ap.add_argument("--out", default="results/certify")
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = certifier.CertifyConfig(xi_max=args.xi_max, xi_step=args.xi_step, samples=args.samples)
    rows = []
    for name in args.spaces.split(","):
        sp = space_from_name(name)
        for t in (float(s) for s in args.t.split(",")):
            start = time.perf_counter()
            rep = certifier.certify_space(sp, t, cfg)
            (out / f"{name}_t{t:g}.json").write_text(rep.to_json())
            rows.append([name, t, rep.meta["expected_D"], f"{rep.D:.4f}", f"{rep.B:.4g}",
                         rep.passed, rep.growth.passed, f"{time.perf_counter() - start:.1f}"])
            print(*rows[-1], sep="\t", flush=True)
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["space", "t", "expected_D", "D", "B", "passed", "growth", "seconds"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
