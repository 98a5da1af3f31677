"""Numerical slow-decrease certification for entire functions of one variable.

u is slowly decreasing when, for real xi,

    sup{|u(zeta)| : |zeta - xi| <= A log(2 + |xi|)} >= B (C + |xi|)^(-D).

Disk suprema are lower-bounded by boundary sampling (maximum principle) plus
the center and a real window [xi - w, xi + w].  The full-disk supremum grows
like e^(R A log(2+xi)) for kernels of exponential type R, so the decay
exponent D is fitted on the real-window supremum, which is a lower bound for
the disk supremum and therefore conservative.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rankone
from .errors import SphericalError
from .rootdata import RankOneSpace

SCHEMA_VERSION = 1
DEFAULT_SAMPLES = 512
WINDOW_SAMPLES = 64
C_FIXED = 2.0
DIP_TOL = 1e-3
GROWTH_FACTOR = 1.5


def thread_count() -> int:
    env = os.environ.get("SPHERICAL_MV_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, min(4, os.cpu_count() or 1))


def _pmap(fn, items):
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))  # order preserved: deterministic reduction


class EvaluationError(SphericalError):
    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


def _evaluate(u, zeta):
    try:
        vals = np.asarray(u(zeta), dtype=complex)
    except SphericalError as exc:
        raise EvaluationError(f"evaluator failed near zeta = {complex(np.ravel(zeta)[0])}: {exc}",
                              point=complex(np.ravel(zeta)[0])) from exc
    return np.broadcast_to(vals, np.shape(zeta))


def _ring(samples):
    return np.exp(2j * math.pi * np.arange(samples) / samples)


@dataclass(frozen=True)
class DiskSup:
    value: float
    samples: int
    variation: float  # max relative jump between neighboring boundary samples


def sup_on_disk(u, center: float, radius: float, samples: int = DEFAULT_SAMPLES, detail: bool = False):
    """max |u| over `samples` boundary points and the center (a lower estimate of the disk supremum)."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    pts = np.concatenate([[complex(center)], center + radius * _ring(samples)])
    mags = np.abs(_evaluate(u, pts))
    top = float(mags.max())
    ring = mags[1:]
    var = float(np.max(np.abs(ring - np.roll(ring, 1))) / top) if top > 0 else 0.0
    return DiskSup(top, samples, var) if detail else top


@dataclass
class SlowDecreaseReport:
    A: float
    xi_grid: np.ndarray
    radii: np.ndarray
    sup_values: np.ndarray
    real_sup: np.ndarray
    B: float
    C: float
    D: float
    verdict: bool
    margins: np.ndarray
    target: tuple | None = None
    samples: int = DEFAULT_SAMPLES
    variation: float = 0.0
    growth: "GrowthVerdict | None" = None
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict and (self.growth is None or self.growth.passed)

    def bound(self) -> np.ndarray:
        B, C, D = self.target if self.target else (self.B, self.C, self.D)
        return B * (C + np.abs(self.xi_grid)) ** (-D)

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "A": self.A,
            "fitted": {"B": self.B, "C": self.C, "D": self.D},
            "target": None if self.target is None else dict(zip("BCD", map(float, self.target))),
            "verdict": "pass" if self.verdict else "fail",
            "passed": self.passed,
            "samples": self.samples,
            "max_neighbor_variation": self.variation,
            "xi": self.xi_grid.tolist(),
            "radius": self.radii.tolist(),
            "sup": self.sup_values.tolist(),
            "real_window_sup": self.real_sup.tolist(),
            "margin": self.margins.tolist(),
            "meta": self.meta,
        }
        if self.growth is not None:
            out["growth"] = self.growth.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["xi", "radius", "sup", "bound", "margin"])
        for row in zip(self.xi_grid, self.radii, self.sup_values, self.bound(), self.margins):
            w.writerow([repr(float(v)) for v in row])
        return buf.getvalue()


def _chunks(n, size):
    return [slice(i, min(n, i + size)) for i in range(0, n, size)]


def certify_slow_decrease(u, A: float, xi_grid, target=None, samples: int = DEFAULT_SAMPLES,
                          window: float | None = None, window_samples: int = WINDOW_SAMPLES,
                          tail_fraction: float = 0.1, dip_tol: float = DIP_TOL) -> SlowDecreaseReport:
    """Disk suprema on radius A log(2+|xi|), fitted (B, C=2, D), verdict.

    Without a target the verdict requires finite positive suprema and no
    unrescued dips: min_k real_sup_k (2+|xi_k|)^D >= dip_tol * median.
    D is the least-squares slope of -log real_sup against log(2+|xi|) over
    |xi| >= tail_fraction * max|xi|, clamped at 0.
    """
    xi = np.asarray(xi_grid, dtype=float)
    if xi.size < 2:
        raise ValueError("xi_grid needs at least two points")
    radii = A * np.log(2 + np.abs(xi))
    half = np.minimum(radii, window) if window is not None else radii
    ring = _ring(samples)
    offs = np.linspace(-1.0, 1.0, window_samples)

    def work(sl):
        c = xi[sl][:, None]
        disk = c + radii[sl][:, None] * ring[None, :]
        line = c + half[sl][:, None] * offs[None, :]
        pts = np.concatenate([c, disk, line], axis=1)
        mags = np.abs(_evaluate(u, pts.ravel().astype(complex))).reshape(pts.shape)
        bd = mags[:, 1 : samples + 1]
        with np.errstate(invalid="ignore"):
            var = np.max(np.abs(bd - np.roll(bd, 1, axis=1)), axis=1) / np.maximum(bd.max(axis=1), 1e-300)
        real = np.maximum(mags[:, 0], mags[:, samples + 1 :].max(axis=1))
        return mags.max(axis=1), real, var

    parts = _pmap(work, _chunks(xi.size, 16))
    sup = np.concatenate([p[0] for p in parts])
    real = np.concatenate([p[1] for p in parts])
    variation = float(np.concatenate([p[2] for p in parts]).max())
    bad = ~np.isfinite(sup) | ~np.isfinite(real)
    if bad.any():
        raise EvaluationError(f"non-finite supremum at xi = {xi[bad][0]}", point=float(xi[bad][0]))

    logx = np.log(C_FIXED + np.abs(xi))
    tail = np.abs(xi) >= tail_fraction * np.abs(xi).max()
    with np.errstate(divide="ignore"):
        logs = np.log(real)
    ok = np.isfinite(logs) & tail
    if ok.sum() >= 2:
        slope = np.polyfit(logx[ok], logs[ok], 1)[0]
        D = max(0.0, float(-slope))
    else:
        D = 0.0
    ratio = real * np.exp(D * logx)
    B = float(ratio.min())
    if target is not None:
        Bt, Ct, Dt = (float(v) for v in target)
        bound = Bt * (Ct + np.abs(xi)) ** (-Dt)
        margins = sup / bound
        verdict = bool(np.all(sup >= bound))
    else:
        margins = ratio / B if B > 0 else np.full(xi.shape, np.inf)
        verdict = bool(B > 0 and B >= dip_tol * float(np.median(ratio)))
    return SlowDecreaseReport(A, xi, radii, sup, real, B, C_FIXED, D, verdict, margins,
                              None if target is None else tuple(map(float, target)), samples, variation)


# ------------------------------------------------------------- growth type


@dataclass(frozen=True)
class GrowthVerdict:
    passed: bool
    A: float
    R: float
    N: int
    inner_max: float
    outer_max: float

    def to_dict(self) -> dict:
        return {"passed": self.passed, "A": self.A, "R": self.R, "N": self.N,
                "inner_max": self.inner_max, "outer_max": self.outer_max}


def rectangle(re_max: float = 200.0, im_max: float = 3.0, n_re: int = 201, n_im: int = 7) -> np.ndarray:
    X, Y = np.meshgrid(np.linspace(0, re_max, n_re), np.linspace(0, im_max, n_im))
    return (X + 1j * Y).ravel()


def growth_type_check(u, R: float, N: int = 0, grid=None, factor: float = GROWTH_FACTOR) -> GrowthVerdict:
    """|u(zeta)| <= A (1+|zeta|)^N e^(R |Im zeta|) with A fitted as the max ratio.

    Passes when every ratio is finite and the max over the outer half of the
    grid (by |zeta|) is at most `factor` times the max over the inner half,
    i.e. the ratio does not keep growing along the grid.
    """
    grid = rectangle() if grid is None else np.asarray(grid, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.abs(_evaluate(u, grid))
        ratio = vals * np.exp(-R * np.abs(grid.imag)) * (1 + np.abs(grid)) ** (-N)
    if not np.all(np.isfinite(ratio)):
        return GrowthVerdict(False, math.inf, R, N, math.nan, math.inf)
    rad = np.abs(grid)
    cut = 0.5 * rad.max()
    inner = float(ratio[rad <= cut].max())
    outer = float(ratio[rad > cut].max()) if np.any(rad > cut) else 0.0
    A = float(ratio.max())
    return GrowthVerdict(bool(outer <= factor * inner), A, R, N, inner, outer)


# ------------------------------------------------------------- rank one


@dataclass(frozen=True)
class CertifyConfig:
    A: float | None = None  # default max(7/t, 2 pi/t)
    xi_max: float = 400.0
    xi_step: float = 2.0
    samples: int = DEFAULT_SAMPLES
    window_samples: int = WINDOW_SAMPLES
    route: str = "auto"
    N: int = rankone.DEFAULT_SERIES_N
    growth_re_max: float = 200.0
    growth_im_max: float = 3.0
    dip_tol: float = DIP_TOL
    growth_factor: float = GROWTH_FACTOR

    def default_A(self, t: float) -> float:
        return self.A if self.A is not None else max(7.0 / t, 2 * math.pi / t)


def kernel_evaluator(space: RankOneSpace, t: float, route: str = "auto", N: int = rankone.DEFAULT_SERIES_N):
    """zeta -> I(zeta): phi up to its zeta-independent prefactor."""

    def u(zeta):
        vals, _, _ = rankone.koornwinder_I(space, t, np.asarray(zeta, dtype=complex), route=route, N=N)
        return vals

    return u


def certify_space(space: RankOneSpace, t: float, config: CertifyConfig = CertifyConfig()) -> SlowDecreaseReport:
    """Slow decrease and growth type of lam -> phi_lam(exp tH) through the Koornwinder kernel."""
    if not 0 < t <= 5:
        raise ValueError(f"t must lie in (0, 5], got {t}")
    u = kernel_evaluator(space, t, config.route, config.N)
    A = config.default_A(t)
    xi = np.arange(0.0, config.xi_max + 0.5 * config.xi_step, config.xi_step)
    report = certify_slow_decrease(u, A, xi, samples=config.samples, window=math.pi / t,
                                   window_samples=config.window_samples, dip_tol=config.dip_tol)
    grid = rectangle(config.growth_re_max, config.growth_im_max)
    report.growth = growth_type_check(u, R=t, N=0, grid=grid, factor=config.growth_factor)
    report.meta = {
        "space": space.label(),
        "p": space.p,
        "q": space.q,
        "t": t,
        "ell": space.ell,
        "expected_D": space.ell + 0.5 if not space.is_odd else 1.0 + space.ell,
        "route": config.route,
        "series_N": config.N,
        "dip_tol": config.dip_tol,
        "growth_factor": config.growth_factor,
    }
    return report
