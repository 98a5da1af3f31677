"""Command-line entry point: ``spherical-mv <command> [options]``.

Commands: eval, certify, find-m, euclid, bench, selftest.  Options may also
come from a flat ``key = value`` file given with ``--config`` (flags win).
Exit codes: 0 ok, 1 selftest failure, 2 configuration error, 3 numerical
failure, 4 certification failed, 5 search exhausted.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import os
import pathlib
import sys
import time

import numpy as np

from . import __version__, acceptance, certifier, complexgrp, euclid, hcseries, oracle, rankone
from .errors import DomainError, RangeError, SearchExhausted, SphericalError
from .rootdata import space_from_name

EXIT_OK, EXIT_SELFTEST, EXIT_CONFIG, EXIT_NUMERIC, EXIT_CERTIFY, EXIT_EXHAUSTED = 0, 1, 2, 3, 4, 5
SCHEMA_VERSION = 1
CORRUPT_ENV = "SPHERICAL_MV_SELFTEST_CORRUPT"

# tolerance names accepted by --tol, per command, with defaults
TOLERANCES = {
    "eval": {"quad": oracle.DEFAULT_SPEC.abs_tol, "series": 1e-12},
    "certify": {"dip": certifier.DIP_TOL, "growth": certifier.GROWTH_FACTOR},
    "find-m": {"cross": hcseries.CROSS_TOL},
    "euclid": {"safety": euclid.A_SAFETY},
    "bench": {},
    "selftest": {},
}


class ConfigError(Exception):
    pass


# ------------------------------------------------------------- parsing helpers


def parse_grid(text: str) -> np.ndarray:
    """'a:b:step' (inclusive), a comma list, or a single number."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid {text!r} must be start:stop:step")
        a, b, h = (float(s) for s in parts)
        if h <= 0:
            raise ConfigError("grid step must be positive")
        if b < a:
            raise ConfigError(f"grid {text!r} is empty")
        count = int(math.floor((b - a) / h + 1e-9)) + 1
        return a + h * np.arange(count)
    vals = [float(s) for s in text.split(",") if s.strip()]
    if not vals:
        raise ConfigError("grid is empty")
    return np.asarray(vals)


def parse_tolerances(command: str, items) -> dict:
    tol = dict(TOLERANCES[command])
    for item in items or ():
        for piece in item.split(","):
            if not piece.strip():
                continue
            if "=" not in piece:
                raise ConfigError(f"--tol expects name=value, got {piece!r}")
            key, val = (s.strip() for s in piece.split("=", 1))
            if key not in tol:
                known = ", ".join(tol) or "none"
                raise ConfigError(f"unknown tolerance {key!r} for {command} (known: {known})")
            tol[key] = float(val)
            if not tol[key] > 0:
                raise ConfigError(f"tolerance {key} must be positive")
    return tol


def read_config(path: str) -> dict:
    """Flat key = value file; '#' starts a comment; keys use - or _."""
    out = {}
    try:
        text = pathlib.Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def _fmt(x) -> str:
    return repr(float(x))


def write_csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")  # RFC 4180
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def emit(text: str, out: str | None, meta: dict | None = None):
    """Write text to out (and out.meta.json), or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    path = pathlib.Path(out)
    if not path.parent.is_dir():
        raise ConfigError(f"output directory {path.parent} does not exist")
    path.write_text(text, newline="")
    if meta is not None:
        pathlib.Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def base_meta(command: str, args, tol: dict) -> dict:
    skip = {"func", "config", "tol", "out", "out_dir", "command"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return {"schema_version": SCHEMA_VERSION, "command": command, "version": __version__,
            "parameters": params, "tolerances": tol}


def _space(name: str):
    try:
        return space_from_name(name)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc).strip("'\"")) from None


# ------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    tol = parse_tolerances("eval", args.tol)
    sp = _space(args.space)
    if not args.t > 0:
        raise ConfigError("t must be positive")
    lam = parse_grid(args.lam) + 1j * args.lambda_im
    spec = oracle.QuadratureSpec(abs_tol=tol["quad"])
    route = args.route
    if route in rankone.ROUTES:
        val, labels, err = rankone.koornwinder_phi(sp, args.t, lam, route=route, N=args.N, with_info=True,
                                                   tol=tol["series"], spec=spec)
        val, labels, err = np.atleast_1d(val), np.atleast_1d(labels), np.atleast_1d(err)
    elif route == "hc":
        val, err = hcseries.phi_hc(sp, args.t, lam, K=args.K, with_info=True)
        labels = np.full(lam.shape, "hc", dtype=object)
    elif route == "complex":
        if (sp.p, sp.q) != (2, 0):
            raise ConfigError("route 'complex' is the A_1 formula and needs space H3")
        pairs = [complexgrp.phi_complex_regular(complexgrp.a1_point(args.t, z), with_error=True) for z in lam]
        val = np.array([v for v, _ in pairs])
        err = np.array([e for _, e in pairs])
        labels = np.full(lam.shape, "complex", dtype=object)
    else:
        raise ConfigError(f"unknown route {route!r}")
    if not np.all(np.isfinite(val)):
        raise SphericalError("non-finite value in output")
    rows = [[_fmt(z.real), _fmt(z.imag), _fmt(v.real), _fmt(v.imag), str(r), _fmt(e)]
            for z, v, r, e in zip(lam, val, labels, err)]
    text = write_csv(rows, ["lambda_re", "lambda_im", "value_re", "value_im", "route", "est_error"])
    emit(text, args.out, base_meta("eval", args, tol))
    return EXIT_OK


def _certify_synthetic(name: str, t: float, cfg: certifier.CertifyConfig):
    if name != "gauss":
        raise ConfigError(f"unknown synthetic evaluator {name!r} (known: gauss)")
    u = acceptance.gauss_evaluator
    growth = certifier.growth_type_check(u, R=t, N=0, grid=certifier.rectangle(cfg.growth_re_max, cfg.growth_im_max),
                                         factor=cfg.growth_factor)
    xi = np.arange(0.0, cfg.xi_max + 0.5 * cfg.xi_step, cfg.xi_step)
    try:
        report = certifier.certify_slow_decrease(u, cfg.default_A(t), xi, samples=cfg.samples,
                                                 window=math.pi / t, dip_tol=cfg.dip_tol)
    except certifier.EvaluationError as exc:
        if growth.passed:
            raise
        # the disk suprema overflow; the growth failure already decides the verdict
        return {"schema_version": certifier.SCHEMA_VERSION, "passed": False, "verdict": "fail",
                "slow_decrease": f"not evaluated: {exc}", "growth": growth.to_dict(),
                "meta": {"synthetic": name, "t": t}}, None
    report.growth = growth
    report.meta = {"synthetic": name, "t": t}
    return report.to_dict(), report


def cmd_certify(args) -> int:
    tol = parse_tolerances("certify", args.tol)
    out_dir = pathlib.Path(args.out_dir)
    if not out_dir.is_dir():
        raise ConfigError(f"output directory {out_dir} does not exist")
    if not 0 < args.t <= 5:
        raise ConfigError("t must lie in (0, 5]")
    cfg = certifier.CertifyConfig(A=args.A, xi_max=args.xi_max, xi_step=args.xi_step, samples=args.samples,
                                  N=args.N, dip_tol=tol["dip"], growth_factor=tol["growth"])
    if args.synthetic:
        doc, report = _certify_synthetic(args.synthetic, args.t, cfg)
        stem = f"certify_{args.synthetic}_t{args.t:g}"
    else:
        sp = _space(args.space)
        report = certifier.certify_space(sp, args.t, cfg)
        doc = report.to_dict()
        stem = f"certify_{sp.label()}_t{args.t:g}"
    doc["tolerances"] = tol
    doc["parameters"] = base_meta("certify", args, tol)["parameters"]
    json_text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    csv_text = report.to_csv().replace("\n", "\r\n") if report is not None else write_csv([], ["xi", "radius", "sup", "bound", "margin"])
    (out_dir / f"{stem}.json").write_text(json_text)
    (out_dir / f"{stem}.csv").write_text(csv_text, newline="")
    passed = doc["passed"]
    growth = doc.get("growth", {})
    print(f"{stem}: {'pass' if passed else 'FAIL'}"
          + (f" D={report.D:.3f} B={report.B:.3g}" if report is not None else "")
          + (f" growth={'pass' if growth.get('passed') else 'fail'}" if growth else ""))
    return EXIT_OK if passed else EXIT_CERTIFY


def cmd_find_m(args) -> int:
    tol = parse_tolerances("find-m", args.tol)
    sp = _space(args.space)
    verdict = hcseries.eta_conditions(sp, args.eta)
    if not verdict.ok:
        raise ConfigError(f"eta = {args.eta} violates conditions {', '.join(verdict.failed())}")
    res = hcseries.find_M(sp, args.eta, args.H0, K=args.K, M_max=args.M_max, M_step=args.M_step)
    hcseries.gamma_coeffs(sp, 1.0 - 1j * args.eta, K=args.K, cross_tol=tol["cross"])
    doc = {
        "schema_version": SCHEMA_VERSION,
        "space": sp.label(),
        "eta": res.eta,
        "H0_scalar": res.H0_scalar,
        "M_star": res.M_star,
        "C_star": res.C_star,
        "constants": {"m1": res.m1, "m2": res.m2, "K_H0": res.K_H0, "K_H0_verified": res.K_verified},
        "monotone": bool(np.all(np.diff(res.C_M) >= 0)),
        "curve": {"M": res.M_grid.tolist(), "C_M": res.C_M.tolist()},
        "tolerances": tol,
    }
    if args.check:
        xi = np.linspace(0, 200, 401)
        chk = hcseries.lower_bound_check(sp, args.eta, res.M_star + 1, xi, res.C_star, M_star=res.M_star, K=args.K)
        doc["lower_bound_check"] = {"t": chk.t, "passed": chk.passed, "min_margin": float(chk.margin.min())}
    emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out, base_meta("find-m", args, tol))
    return EXIT_OK


def _euclid_grid(dim: int, xi_max: float, count: int, seed: int):
    radii = np.linspace(0.0, xi_max, count)
    if dim == 1:
        return radii
    return acceptance.xi_directions(np.random.default_rng(seed), dim, radii)


def cmd_euclid(args) -> int:
    tol = parse_tolerances("euclid", args.tol)
    try:
        text = pathlib.Path(args.input).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input}: {exc}") from None
    try:
        mu = euclid.ExpPolyDistribution.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"malformed distribution JSON: {exc}") from None
    grid = _euclid_grid(mu.dim, args.xi_max, args.xi_count, args.seed)
    doc = {"schema_version": SCHEMA_VERSION, "dim": mu.dim, "terms": len(mu.terms), "tolerances": tol}
    if not mu.is_delta_sum:
        xi = grid if mu.dim > 1 else grid[:, None]
        doc["log_abs_ft_real"] = euclid.log_abs_ft(mu, xi.astype(complex)).tolist()
        doc["bound"] = None
        doc["note"] = "lower-bound constant is available for weighted delta sums only"
        emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out, base_meta("euclid", args, tol))
        return EXIT_OK
    if len(mu.terms) < 2:
        raise ConfigError("a single delta is a translation: trivially invertible, no constant to compute")
    weights = mu.weights
    const = euclid.deltafcn_constant_A(mu.points, None if np.allclose(weights, 1) else weights, safety=tol["safety"])
    verdict = euclid.verify_delta_bound(mu.points, None if np.allclose(weights, 1) else weights, grid, const=const)
    xi_w, lhs_w, rhs_w = verdict.worst
    doc["bound"] = {
        "A": const.A,
        "M": const.M,
        "lead_index": const.lead,
        "weighted": const.weighted,
        "passed": verdict.passed,
        "min_log_margin": float(verdict.log_margin.min()),
        "worst_xi": np.atleast_1d(xi_w).tolist(),
    }
    emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out, base_meta("euclid", args, tol))
    return EXIT_OK if verdict.passed else EXIT_CERTIFY


def cmd_bench(args) -> int:
    tol = parse_tolerances("bench", args.tol)
    lam = np.linspace(1.0, 200.0, args.points)
    cases = [
        ("H3 recurrence", lambda: rankone.koornwinder_I(space_from_name("H3"), 1.0, lam, route="recurrence")),
        ("H5 recurrence", lambda: rankone.koornwinder_I(space_from_name("H5"), 1.0, lam, route="recurrence")),
        ("H4 series N=10", lambda: rankone.koornwinder_I(space_from_name("H4"), 1.0, lam, route="series")),
        ("H4 oracle", lambda: rankone.koornwinder_I(space_from_name("H4"), 1.0, lam, route="oracle")),
        ("CH2 hc K=60", lambda: hcseries.phi_hc(space_from_name("CH2"), 1.0, lam)),
    ]
    rows = []
    for name, fn in cases:
        best = math.inf
        for _ in range(args.repeat):
            start = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - start)
        rows.append([name, str(args.points), _fmt(best), _fmt(best / args.points * 1e6)])
    text = write_csv(rows, ["case", "points", "seconds", "us_per_point"])
    emit(text, args.out, base_meta("bench", args, tol))
    return EXIT_OK


@contextlib.contextmanager
def _corrupted_prefactor():
    """Selftest hook: scale the Koornwinder normalization by 1 + 1e-6."""
    original = rankone.koornwinder_prefactor
    rankone.koornwinder_prefactor = lambda space, t: original(space, t) * (1 + 1e-6)
    try:
        yield
    finally:
        rankone.koornwinder_prefactor = original


def cmd_selftest(args) -> int:
    parse_tolerances("selftest", args.tol)
    only = [int(s) for s in args.only.split(",")] if args.only else None
    if only and any(k not in acceptance.CRITERIA for k in only):
        raise ConfigError(f"--only takes criterion numbers 1..{len(acceptance.CRITERIA)}")
    corrupt = os.environ.get(CORRUPT_ENV, "") not in ("", "0")
    start = time.perf_counter()
    with _corrupted_prefactor() if corrupt else contextlib.nullcontext():
        results = acceptance.run_all(reduced=not args.full, only=only)
    for r in results:
        print(f"{r.line()} [{r.seconds:.1f}s]")
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria pass in {time.perf_counter() - start:.1f}s"
          + (f"; failing: {failed}" if failed else ""))
    return EXIT_OK if not failed else EXIT_SELFTEST


# ------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spherical-mv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value file (command-line flags take precedence)")
        p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tolerance override (repeatable)")

    p = sub.add_parser("eval", help="evaluate phi_lambda(exp tH) on a lambda grid")
    common(p)
    p.add_argument("--space", default="H3")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", default="0:10:0.5", help="start:stop:step (inclusive) or comma list")
    p.add_argument("--lambda-im", type=float, default=0.0, help="imaginary part added to every grid point")
    p.add_argument("--route", default="auto", choices=(*rankone.ROUTES, "hc", "complex"))
    p.add_argument("--N", type=int, default=rankone.DEFAULT_SERIES_N, help="Bessel-series terms (even n)")
    p.add_argument("--K", type=int, default=60, help="Harish-Chandra truncation")
    p.add_argument("--out", help="CSV path (default stdout); writes <out>.meta.json alongside")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("certify", help="slow-decrease and growth-type certificate")
    common(p)
    p.add_argument("--space", default="H3")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--A", type=float, default=None, help="disk radius factor (default max(7/t, 2 pi/t))")
    p.add_argument("--xi-max", type=float, default=400.0)
    p.add_argument("--xi-step", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=certifier.DEFAULT_SAMPLES)
    p.add_argument("--N", type=int, default=rankone.DEFAULT_SERIES_N)
    p.add_argument("--synthetic", choices=("gauss",), help="certify a synthetic evaluator instead of a kernel")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("find-m", help="least M with C_M > 0 at rank one")
    common(p)
    p.add_argument("--space", default="H3")
    p.add_argument("--eta", type=float, default=0.1)
    p.add_argument("--H0", type=float, default=0.5)
    p.add_argument("--K", type=int, default=60)
    p.add_argument("--M-max", type=float, default=200.0)
    p.add_argument("--M-step", type=float, default=0.25)
    p.add_argument("--check", action="store_true", help="also run lower_bound_check at M_star + 1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_find_m)

    p = sub.add_parser("euclid", help="lower bound for a finite sum of weighted deltas")
    common(p)
    p.add_argument("--input", required=True, help="distribution JSON")
    p.add_argument("--xi-max", type=float, default=100.0)
    p.add_argument("--xi-count", type=int, default=201)
    p.add_argument("--seed", type=int, default=0, help="seed for the xi directions when n > 1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_euclid)

    p = sub.add_parser("bench", help="time the evaluators")
    common(p)
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="acceptance criteria on reduced grids")
    common(p)
    p.add_argument("--full", action="store_true", help="use the full acceptance grids")
    p.add_argument("--only", help="comma list of criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv):
    """Re-parse with config-file values installed as subcommand defaults."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    values = read_config(args.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[args.command]
    dests = {a.dest: a for a in sub._actions}
    alias = {"lambda": "lam"}
    defaults = {}
    for key, val in values.items():
        dest = alias.get(key, key)
        if dest not in dests or dest in ("config", "help"):
            raise ConfigError(f"unknown config key {key!r} for {args.command}")
        action = dests[dest]
        if dest == "tol":
            defaults[dest] = [val]
        elif isinstance(action, argparse._StoreTrueAction):
            defaults[dest] = val.lower() in ("1", "true", "yes", "on")
        else:
            try:
                defaults[dest] = action.type(val) if action.type else val
            except ValueError:
                raise ConfigError(f"bad value {val!r} for {key}") from None
            if action.choices and defaults[dest] not in action.choices:
                raise ConfigError(f"{key} must be one of {', '.join(action.choices)}")
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (DomainError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SphericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
