"""Command-line front end.

Subcommands: rho, boundary, scan, adjacency, bessel, verify, render.
Every subcommand accepts --config PATH pointing at a JSON file whose keys
use the same field names as the library types (a_min, b_steps, mu, ...);
explicit flags override config values.  Exit codes: 0 success, 2 for
regime/bracket/integration failures, 1 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bessel import bessel_eval, gen_bessel, gen_bessel_asymptotic
from .errors import JosephsonError
from .flow import DEFAULT_CONFIG, IntegratorConfig, Params
from .forcing import ForcingProfile
from .io import (boundary_from_csv, boundary_to_csv, scan_from_csv,
                 scan_to_csv)
from .render import render_svg
from .residuals import BatteryConfig, RegimeConfig, run_battery
from .rotation import rotation_number, rotation_number_iterated
from .scan import ScanGrid, scan_plane
from .tongue import find_adjacencies, trace_boundary


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; runtime failures exit 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(p: _Parser):
    p.add_argument("--config", type=Path, help="JSON config file")
    p.add_argument("--out", type=Path, help="output path (default stdout)")
    p.add_argument("--format", choices=["csv", "json", "svg"])
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--abs-tol", type=float, dest="abs_tol")
    p.add_argument("--workers", type=int)


def build_parser() -> _Parser:
    parser = _Parser(prog="josephson",
                     description="Rotation numbers and Arnold tongues of "
                                 "the driven Josephson circle flow")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("rho", help="rotation number at one (a, b, mu)")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--forcing", type=Path, help="forcing profile JSON")
    p.add_argument("--iterated", action="store_true",
                   help="use the long-integration oracle route")
    p.add_argument("--n-periods", type=int, dest="n_periods")
    _add_common(p)

    p = sub.add_parser("boundary", help="trace tongue boundaries over b")
    p.add_argument("--k", type=int)
    p.add_argument("--mu", type=float)
    p.add_argument("--b-min", type=float, dest="b_min")
    p.add_argument("--b-max", type=float, dest="b_max")
    p.add_argument("--b-steps", type=int, dest="b_steps")
    p.add_argument("--tol-a", type=float, dest="tol_a")
    _add_common(p)

    p = sub.add_parser("scan", help="rotation-number scan of the (a, b) "
                                    "plane at fixed mu")
    p.add_argument("--a-min", type=float, dest="a_min")
    p.add_argument("--a-max", type=float, dest="a_max")
    p.add_argument("--a-steps", type=int, dest="a_steps")
    p.add_argument("--b-min", type=float, dest="b_min")
    p.add_argument("--b-max", type=float, dest="b_max")
    p.add_argument("--b-steps", type=int, dest="b_steps")
    p.add_argument("--mu", type=float)
    _add_common(p)

    p = sub.add_parser("adjacency", help="zero-width points of one tongue")
    p.add_argument("--k", type=int)
    p.add_argument("--mu", type=float)
    p.add_argument("--b-min", type=float, dest="b_min")
    p.add_argument("--b-max", type=float, dest="b_max")
    p.add_argument("--tol-a", type=float, dest="tol_a")
    _add_common(p)

    p = sub.add_parser("bessel", help="Bessel kit evaluation")
    p.add_argument("--k", type=int)
    p.add_argument("--z", type=float)
    p.add_argument("--route", choices=["series", "integral", "asymptotic"])
    p.add_argument("--forcing", type=Path,
                   help="evaluate the generalized variant for this profile")
    p.add_argument("--asymptotic", action="store_true",
                   help="with --forcing: stationary-phase asymptotic")
    _add_common(p)

    p = sub.add_parser("verify", help="run residual checks, emit a report")
    p.add_argument("--checks", type=str,
                   help="comma list among thm1,thm2,prop_osc,lemma_avg,"
                        "adj_line,eq7_spacing")
    p.add_argument("--mu", type=float)
    _add_common(p)

    p = sub.add_parser("render", help="SVG from scan/boundary CSV files")
    p.add_argument("--scan", type=Path, help="scan CSV")
    p.add_argument("--boundary", type=Path, action="append",
                   help="boundary CSV (repeatable)")
    p.add_argument("--mu", type=float)
    _add_common(p)

    return parser


class _Settings:
    """Flag-over-config lookup."""

    def __init__(self, args):
        self.args = vars(args)
        self.cfg = {}
        path = self.args.get("config")
        if path is not None:
            self.cfg = json.loads(Path(path).read_text())

    def get(self, name, default=None):
        v = self.args.get(name)
        if v is not None:
            return v
        return self.cfg.get(name, default)

    def require(self, name):
        v = self.get(name)
        if v is None:
            raise SystemExit((f"missing required option --{name} (flag or "
                              f"config)", 1))
        return v


def _integrator_config(s: _Settings) -> IntegratorConfig:
    rel = s.get("rel_tol", DEFAULT_CONFIG.rel_tol)
    ab = s.get("abs_tol", DEFAULT_CONFIG.abs_tol)
    return IntegratorConfig(rel_tol=rel, abs_tol=ab)


def _forcing(s: _Settings) -> ForcingProfile:
    path = s.get("forcing")
    if path is None:
        return ForcingProfile.cosine()
    return ForcingProfile.from_json(Path(path).read_text())


def _emit(s: _Settings, text: str) -> None:
    out = s.get("out")
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _json_dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _cmd_rho(s: _Settings) -> int:
    a = float(s.require("a"))
    b = float(s.require("b"))
    mu = float(s.require("mu"))
    gamma = float(s.get("gamma", 1.0))
    p = Params(a=a, b=b, mu=mu, gamma=gamma)
    cfg = _integrator_config(s)
    forcing = _forcing(s)
    if s.get("iterated"):
        n = int(s.get("n_periods", 200))
        rn = rotation_number_iterated(p, forcing, n, cfg)
    else:
        rn = rotation_number(p, forcing, cfg)
    _emit(s, _json_dump({"a": a, "b": b, "mu": mu, "rho": rn.value,
                         "locked": rn.locked, "k": rn.k,
                         "method": rn.method}))
    return 0


def _cmd_boundary(s: _Settings) -> int:
    k = int(s.require("k"))
    mu = float(s.require("mu"))
    b_min = float(s.require("b_min"))
    b_max = float(s.require("b_max"))
    steps = int(s.get("b_steps", 41))
    tol_a = float(s.get("tol_a", 5e-15))
    cfg = _integrator_config(s)
    grid = np.linspace(b_min, b_max, steps)
    trace = trace_boundary(k, grid, mu, cfg, tol_a)
    if s.get("format") == "json":
        doc = {"points": [vars(p) for p in trace.points],
               "failures": list(trace.failures)}
        _emit(s, _json_dump(doc))
    else:
        _emit(s, boundary_to_csv(trace.points))
    return 0


def _cmd_scan(s: _Settings) -> int:
    grid = ScanGrid(
        a_min=float(s.require("a_min")), a_max=float(s.require("a_max")),
        a_steps=int(s.require("a_steps")),
        b_min=float(s.require("b_min")), b_max=float(s.require("b_max")),
        b_steps=int(s.require("b_steps")), mu=float(s.require("mu")))
    cfg = _integrator_config(s)
    workers = int(s.get("workers", 1))
    cells = scan_plane(grid, cfg, workers=workers)
    if s.get("format") == "svg":
        _emit(s, render_svg(cells=cells, mu=grid.mu,
                            k_lines=list(range(grid.k_range[0],
                                               grid.k_range[1] + 1))))
    else:
        _emit(s, scan_to_csv(cells, grid.mu))
    return 0


def _cmd_adjacency(s: _Settings) -> int:
    k = int(s.require("k"))
    mu = float(s.require("mu"))
    b_min = float(s.require("b_min"))
    b_max = float(s.require("b_max"))
    tol_a = float(s.get("tol_a", 5e-15))
    cfg = _integrator_config(s)
    pts = find_adjacencies(k, (b_min, b_max), mu, cfg, tol_a)
    doc = [{"k": p.k, "mu": p.mu, "b_star": p.b_star, "a_star": p.a_star,
            "identity_defect": p.identity_defect} for p in pts]
    _emit(s, _json_dump(doc))
    return 0


def _cmd_bessel(s: _Settings) -> int:
    k = int(s.require("k"))
    z = float(s.require("z"))
    if s.get("forcing") is not None:
        forcing = _forcing(s)
        if s.get("asymptotic"):
            value = gen_bessel_asymptotic(k, z, forcing)
            doc = {"k": k, "z": z, "value": value, "route": "asymptotic",
                   "generalized": True}
        else:
            value = gen_bessel(k, z, forcing)
            doc = {"k": k, "z": z, "value": value, "route": "integral",
                   "generalized": True}
    else:
        route = s.get("route", "series")
        ev = bessel_eval(k, z, route)
        doc = {"k": ev.k, "z": ev.z, "value": ev.value, "route": ev.route,
               "est_err": ev.est_err, "generalized": False}
    _emit(s, _json_dump(doc))
    return 0


def _cmd_verify(s: _Settings) -> int:
    checks = s.get("checks")
    kwargs = {}
    if checks:
        kwargs["checks"] = tuple(c.strip() for c in checks.split(","))
    mu = s.get("mu")
    if mu is not None:
        kwargs["mu"] = float(mu)
    for name in ("thm1_k", "thm1_b", "thm2_ks", "thm2_b", "per_decade",
                 "lemma_draws", "adj_mu1_ks", "adj_mu1_b", "eq7_k",
                 "eq7_b"):
        if s.get(name) is not None:
            v = s.get(name)
            kwargs[name] = tuple(v) if isinstance(v, list) else v
    if s.get("regime_c1") is not None or s.get("regime_c2") is not None:
        kwargs["regime"] = RegimeConfig(
            c1=float(s.get("regime_c1", 0.3)),
            c2=float(s.get("regime_c2", 10.0)))
    battery = BatteryConfig(**kwargs)
    report = run_battery(battery, _integrator_config(s))
    _emit(s, _json_dump(report))
    counts = report["summary"]["pass_counts"]
    failed = sum(c["total"] - c["pass"] for c in counts.values())
    return 0 if failed == 0 else 2


def _cmd_render(s: _Settings) -> int:
    cells = None
    mu = s.get("mu")
    if s.get("scan") is not None:
        cells, mu_csv = scan_from_csv(Path(s.get("scan")).read_text())
        mu = mu if mu is not None else mu_csv
    boundaries = []
    for path in s.get("boundary") or []:
        boundaries.extend(boundary_from_csv(Path(path).read_text()))
    _emit(s, render_svg(cells=cells, boundaries=boundaries,
                        mu=None if mu is None else float(mu)))
    return 0


_COMMANDS = {
    "rho": _cmd_rho,
    "boundary": _cmd_boundary,
    "scan": _cmd_scan,
    "adjacency": _cmd_adjacency,
    "bessel": _cmd_bessel,
    "verify": _cmd_verify,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    s = _Settings(args)
    try:
        return _COMMANDS[args.command](s)
    except SystemExit as exc:
        if isinstance(exc.code, tuple):
            print(exc.code[0], file=sys.stderr)
            return exc.code[1]
        raise
    except JosephsonError as exc:
        print(f"josephson: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"josephson: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
