"""Numerical residual checks for the asymptotic envelopes of the flow.

Each check produces ResidualRecord entries carrying the raw residual and
the residual scaled by its predicted envelope.  The envelopes' absolute
constants are existential (never pinned numerically), so single-record
pass flags use fitted desk-scale caps, clearly labeled as fitted in the
report, while grid-level conclusions rest on trend statistics: medians
over log-spaced grids and log-log regression slopes, never single
points.

Check ids (the ``which`` field):

    thm1         |k - rho(k mu, b, mu)| scaled by sqrt(b mu)
    thm2_0/pi    boundary-vs-Bessel residual scaled by b / ln(b/mu)
    prop_osc     sup_t |int_0^t cos x| scaled by sqrt(b/mu)
    lemma_avg    time-average vs space-average inequality on monotone arcs
    adj_line     adjacency points against the line a = k mu
    eq7_spacing  adjacency spacing in b against pi mu
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad

from .errors import OutOfRegime, SignChange
from .flow import (DEFAULT_CONFIG, IntegratorConfig, Params, integrate_flow,
                   osc_extrema, rhs_eval)
from .forcing import ForcingProfile
from .rotation import rotation_number
from .tongue import boundary_at, find_adjacencies
from .bessel import bessel_j

TWO_PI = 2.0 * math.pi

ADJ_LINE_TOL = 1e-6
EQ7_REL_TOL = 0.05
EQ7_MIN_Z = 50.0
LEMMA_SLACK = 1e-9


@dataclass(frozen=True)
class RegimeConfig:
    """Stand-ins for the existential regime constants: the checks demand
    |a| + 1 <= c1 sqrt(b mu) and b >= c2 mu.  Defaults sit comfortably
    inside any admissible constants for the desk-scale grids and are
    configurable."""

    c1: float = 0.3
    c2: float = 10.0

    def require(self, a: float, b: float, mu: float) -> None:
        if not (abs(a) + 1.0 <= self.c1 * math.sqrt(b * mu)):
            raise OutOfRegime(
                f"|a|+1 = {abs(a) + 1:g} exceeds c1*sqrt(b mu) = "
                f"{self.c1 * math.sqrt(max(b * mu, 0.0)):g}")
        if not (b >= self.c2 * mu):
            raise OutOfRegime(f"b = {b:g} below c2*mu = {self.c2 * mu:g}")


@dataclass(frozen=True)
class FittedCaps:
    """Desk-scale caps for single-record pass flags (fitted, not derived:
    the true envelope constants are existential).  Values are ~2x the
    maxima measured over the standard battery grids at mu = 0.4."""

    thm1: float = 2.0
    thm2: float = 1.0
    prop_osc: float = 8.0


DEFAULT_REGIME = RegimeConfig()
DEFAULT_CAPS = FittedCaps()


@dataclass(frozen=True)
class ResidualRecord:
    which: str
    params: dict
    raw: float
    scaled: float
    passed: bool

    def to_dict(self) -> dict:
        return {"which": self.which, "params": self.params,
                "raw": self.raw, "scaled": self.scaled, "pass": self.passed}


def thm1_residual(k: int, b: float, mu: float,
                  cfg: IntegratorConfig = DEFAULT_CONFIG,
                  regime: RegimeConfig = DEFAULT_REGIME,
                  caps: FittedCaps = DEFAULT_CAPS,
                  forcing: Optional[ForcingProfile] = None) -> ResidualRecord:
    """Rotation-number drift |k - rho| at a = k mu, scaled by sqrt(b mu)."""
    a = k * mu
    regime.require(a, b, mu)
    forcing = forcing if forcing is not None else ForcingProfile.cosine()
    rho = rotation_number(Params(a=a, b=b, mu=mu), forcing, cfg).value
    raw = abs(k - rho)
    scaled = raw * math.sqrt(b * mu)
    return ResidualRecord(which="thm1",
                          params={"k": k, "a": a, "b": b, "mu": mu},
                          raw=raw, scaled=scaled, passed=scaled <= caps.thm1)


def thm2_residual(k: int, b: float, mu: float,
                  cfg: IntegratorConfig = DEFAULT_CONFIG,
                  regime: RegimeConfig = DEFAULT_REGIME,
                  caps: FittedCaps = DEFAULT_CAPS,
                  tol_a: float = 5e-15):
    """Boundary-vs-Bessel residuals at both tongue edges.

    raw_0 = |a0/mu - k + J_k(-b/mu)/mu|, raw_pi with the opposite sign;
    both scaled by b / ln(b/mu).
    """
    regime.require(k * mu, b, mu)
    pt = boundary_at(k, b, mu, cfg, tol_a)
    jk = bessel_j(k, -b / mu)
    raw0 = abs(pt.a0 / mu - k + jk / mu)
    rawpi = abs(pt.api / mu - k - jk / mu)
    scale = b / math.log(b / mu)
    rec0 = ResidualRecord(which="thm2_0",
                          params={"k": k, "a": pt.a0, "b": b, "mu": mu},
                          raw=raw0, scaled=raw0 * scale,
                          passed=raw0 * scale <= caps.thm2)
    recpi = ResidualRecord(which="thm2_pi",
                           params={"k": k, "a": pt.api, "b": b, "mu": mu},
                           raw=rawpi, scaled=rawpi * scale,
                           passed=rawpi * scale <= caps.thm2)
    return rec0, recpi


def osc_integral_sup(p: Params, forcing: ForcingProfile,
                     cfg: IntegratorConfig = DEFAULT_CONFIG,
                     regime: RegimeConfig = DEFAULT_REGIME,
                     caps: FittedCaps = DEFAULT_CAPS,
                     x0: float = 0.0) -> ResidualRecord:
    """sup over t* in [0, 2pi] of |int_0^{t*} cos x|, scaled by
    sqrt(b/mu).  The sup is taken over accepted-step endpoints, which the
    step cap makes dense on the oscillation scale."""
    regime.require(p.a, p.b, p.mu)
    lo, hi, _ = osc_extrema(p, forcing, x0, 0.0, TWO_PI, cfg)
    raw = max(abs(lo), abs(hi))
    scaled = raw * math.sqrt(p.b / p.mu)
    return ResidualRecord(
        which="prop_osc",
        params={"k": None, "a": p.a, "b": p.b, "mu": p.mu},
        raw=raw, scaled=scaled, passed=scaled <= caps.prop_osc)


def avg_diff_check(p: Params, forcing: ForcingProfile,
                   window: tuple[float, float],
                   psi: Callable[[float], float],
                   psi_sup: Optional[float] = None,
                   n_nodes: int = 4001,
                   cfg: IntegratorConfig = DEFAULT_CONFIG,
                   x0: float = 0.0) -> ResidualRecord:
    """Time average of psi(x(t)) vs its space average along the same arc.

    Requires the phase velocity to keep one sign on the window (checked
    by dense sampling; SignChange otherwise).  The claimed bound is

        |avg_t - avg_x| <= osc(xdot)/min|xdot| * sup|psi|,

    and the record passes when the inequality holds with 1e-9 slack.
    """
    t0, t1 = window
    if not t1 > t0:
        raise ValueError("window must have t1 > t0")
    if n_nodes % 2 == 0:
        n_nodes += 1
    ts = np.linspace(t0, t1, n_nodes)
    xs = np.empty(n_nodes)
    xs[0] = x0
    for i in range(1, n_nodes):
        xs[i] = integrate_flow(p, forcing, xs[i - 1], ts[i - 1], ts[i],
                               cfg).x1
    xdot = np.array([rhs_eval(p, forcing, x, t) for x, t in zip(xs, ts)])
    if np.min(xdot) < 0.0 < np.max(xdot) or np.any(xdot == 0.0):
        raise SignChange("phase velocity changes sign on the window")
    speed = np.abs(xdot)
    osc_speed = float(np.max(speed) - np.min(speed))
    min_speed = float(np.min(speed))

    psi_vals = np.array([psi(x) for x in xs])
    h = (t1 - t0) / (n_nodes - 1)
    simpson = (h / 3.0) * (psi_vals[0] + psi_vals[-1]
                           + 4.0 * np.sum(psi_vals[1:-1:2])
                           + 2.0 * np.sum(psi_vals[2:-1:2]))
    time_avg = simpson / (t1 - t0)

    x_lo, x_hi = xs[0], xs[-1]
    space_int, _ = quad(psi, x_lo, x_hi, epsabs=1e-12, epsrel=1e-12,
                        limit=400)
    space_avg = space_int / (x_hi - x_lo)

    if psi_sup is None:
        grid = np.linspace(0.0, TWO_PI, 4096, endpoint=False)
        psi_sup = float(np.max(np.abs([psi(x) for x in grid])))

    lhs = abs(time_avg - space_avg)
    rhs = (osc_speed / min_speed) * psi_sup
    scaled = lhs / (rhs + LEMMA_SLACK)
    return ResidualRecord(
        which="lemma_avg",
        params={"k": None, "a": p.a, "b": p.b, "mu": p.mu,
                "window": [t0, t1]},
        raw=lhs, scaled=scaled, passed=lhs <= rhs + LEMMA_SLACK)


def adjacency_line_check(k: int, mu: float, b_range: tuple[float, float],
                         cfg: IntegratorConfig = DEFAULT_CONFIG
                         ) -> ResidualRecord:
    """Deviation of adjacency points from the line a = k mu.

    Asserted (pass iff max deviation <= 1e-6) for mu >= 1, where the
    line is established; for mu < 1 the record is report-only and always
    passes.
    """
    adjacencies = find_adjacencies(k, b_range, mu, cfg)
    if adjacencies:
        devs = [abs(ap.a_star - k * mu) for ap in adjacencies]
        i = int(np.argmax(devs))
        raw = devs[i]
        b_at = adjacencies[i].b_star
    else:
        raw = 0.0
        b_at = math.nan
    scaled = raw / ADJ_LINE_TOL
    asserted = mu >= 1.0
    return ResidualRecord(
        which="adj_line",
        params={"k": k, "a": k * mu, "b": b_at, "mu": mu,
                "n_adjacencies": len(adjacencies), "asserted": asserted},
        raw=raw, scaled=scaled,
        passed=(scaled <= 1.0) if asserted else True)


def eq7_spacing_check(k: int, mu: float, b_range: tuple[float, float],
                      cfg: IntegratorConfig = DEFAULT_CONFIG
                      ) -> list[ResidualRecord]:
    """Consecutive adjacency spacings in b against the predicted pi mu.

    Asserted at 5% relative tolerance for pairs with b/mu >= 50;
    report-only below.
    """
    adjacencies = find_adjacencies(k, b_range, mu, cfg)
    records = []
    for left, right in zip(adjacencies, adjacencies[1:]):
        spacing = right.b_star - left.b_star
        raw = abs(spacing - math.pi * mu)
        scaled = raw / (math.pi * mu)
        asserted = left.b_star / mu >= EQ7_MIN_Z
        records.append(ResidualRecord(
            which="eq7_spacing",
            params={"k": k, "a": None, "b": left.b_star, "mu": mu,
                    "spacing": spacing, "asserted": asserted},
            raw=raw, scaled=scaled,
            passed=(scaled <= EQ7_REL_TOL) if asserted else True))
    return records


# ---------------------------------------------------------------------------
# trend statistics and report assembly

def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ln y against ln x (positive pairs only)."""
    pts = [(x, y) for x, y in zip(xs, ys) if x > 0.0 and y > 0.0]
    if len(pts) < 2:
        return math.nan
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    return float(np.polyfit(lx, ly, 1)[0])


def decade_medians(xs: Sequence[float], ys: Sequence[float]):
    """Medians of y over the bottom and top decades of the x-grid."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    lo, hi = float(np.min(xs)), float(np.max(xs))
    bottom = ys[xs <= min(lo * 10.0, hi)]
    top = ys[xs >= max(hi / 10.0, lo)]
    return float(np.median(bottom)), float(np.median(top))


def no_increasing_trend(xs: Sequence[float], ys: Sequence[float],
                        factor: float = 2.0) -> bool:
    """Top-decade median at most ``factor`` times the bottom-decade one."""
    bottom, top = decade_medians(xs, ys)
    return top <= factor * max(bottom, 1e-300)


def log_grid(lo: float, hi: float, per_decade: int = 12) -> list[float]:
    """Log-spaced grid with at least per_decade points per decade."""
    decades = math.log10(hi / lo)
    n = max(3, int(math.ceil(per_decade * decades)) + 1)
    return list(np.geomspace(lo, hi, n))


def build_report(records: Sequence[ResidualRecord],
                 summary_extra: Optional[dict] = None) -> dict:
    by_which: dict[str, list[ResidualRecord]] = {}
    for rec in records:
        by_which.setdefault(rec.which, []).append(rec)
    summary = {
        "pass_counts": {
            which: {"pass": sum(1 for r in recs if r.passed),
                    "total": len(recs)}
            for which, recs in sorted(by_which.items())
        },
        "fitted_caps": {"thm1": DEFAULT_CAPS.thm1, "thm2": DEFAULT_CAPS.thm2,
                        "prop_osc": DEFAULT_CAPS.prop_osc,
                        "note": "caps fitted at desk scale; the envelope "
                                "constants themselves are existential"},
    }
    if summary_extra:
        summary.update(summary_extra)
    return {"records": [r.to_dict() for r in records], "summary": summary}


@dataclass(frozen=True)
class BatteryConfig:
    """Grids for the standard verification battery (Figure-scale)."""

    mu: float = 0.4
    thm1_k: int = 1
    thm1_b: tuple[float, float] = (20.0, 2000.0)
    thm2_ks: tuple[int, ...] = (0, 1, 2)
    thm2_b: tuple[float, float] = (20.0, 100.0)
    per_decade: int = 12
    lemma_draws: int = 20
    adj_mu1_ks: tuple[int, ...] = (0, 1)
    adj_mu1_b: tuple[float, float] = (5.0, 30.0)
    eq7_k: int = 1
    eq7_b: tuple[float, float] = (20.0, 60.0)
    regime: RegimeConfig = field(default_factory=lambda: RegimeConfig(c1=0.7))
    checks: tuple[str, ...] = ("thm1", "thm2", "prop_osc", "lemma_avg",
                               "adj_line", "eq7_spacing")


def run_battery(config: BatteryConfig = BatteryConfig(),
                cfg: IntegratorConfig = DEFAULT_CONFIG) -> dict:
    """Run the configured checks and assemble the JSON-ready report."""
    forcing = ForcingProfile.cosine()
    records: list[ResidualRecord] = []
    extra: dict = {"grids": {}}

    if "thm1" in config.checks or "prop_osc" in config.checks:
        bs = log_grid(*config.thm1_b, config.per_decade)
        extra["grids"]["thm1_b"] = bs
        k = config.thm1_k
        scaled1, scaledo = [], []
        for b in bs:
            if "thm1" in config.checks:
                rec = thm1_residual(k, b, config.mu, cfg, config.regime)
                records.append(rec)
                scaled1.append(rec.scaled)
            if "prop_osc" in config.checks:
                rec = osc_integral_sup(
                    Params(a=k * config.mu, b=b, mu=config.mu), forcing,
                    cfg, config.regime)
                records.append(rec)
                scaledo.append(rec.scaled)
        if scaled1:
            extra["thm1_trend_ok"] = no_increasing_trend(bs, scaled1)
        if scaledo:
            extra["prop_osc_trend_ok"] = no_increasing_trend(bs, scaledo)

    if "thm2" in config.checks:
        bs = log_grid(*config.thm2_b, config.per_decade)
        extra["grids"]["thm2_b"] = bs
        slopes = {}
        for k in config.thm2_ks:
            raws = []
            for b in bs:
                rec0, recpi = thm2_residual(k, b, config.mu, cfg,
                                            config.regime)
                records.extend([rec0, recpi])
                raws.append(rec0.raw)
            slopes[str(k)] = loglog_slope(bs, raws)
        extra["thm2_loglog_slopes"] = slopes

    if "lemma_avg" in config.checks:
        rng = np.random.RandomState(20260809)
        done = 0
        while done < config.lemma_draws:
            b = float(rng.uniform(5.0, 40.0))
            a = float(rng.uniform(-1.0, 1.0)) * config.mu
            t_mid = float(rng.choice([0.0, math.pi]))
            half = float(rng.uniform(0.1, 0.5))
            p = Params(a=a, b=b, mu=config.mu)
            try:
                rec = avg_diff_check(p, forcing,
                                     (t_mid + 0.1, t_mid + 0.1 + half),
                                     math.cos, psi_sup=1.0, cfg=cfg)
            except SignChange:
                continue
            records.append(rec)
            done += 1

    if "adj_line" in config.checks:
        for k in config.adj_mu1_ks:
            records.append(adjacency_line_check(k, 1.0, config.adj_mu1_b,
                                                cfg))
        # report-only below mu = 1
        records.append(adjacency_line_check(1, config.mu,
                                            (20.0, 20.0 + 8 * math.pi
                                             * config.mu), cfg))

    if "eq7_spacing" in config.checks:
        records.extend(eq7_spacing_check(config.eq7_k, config.mu,
                                         config.eq7_b, cfg))

    return build_report(records, extra)
