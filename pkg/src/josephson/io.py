"""CSV/JSON wire formats.

All floating values are printed with 17 significant digits so that files
round-trip bit-exactly on one platform.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .scan import ScanCell
from .tongue import BoundaryPoint

SCAN_HEADER = "a,b,mu,rho,locked,k"
BOUNDARY_HEADER = ("k,b,mu,a0,api,a_minus,a_plus,width,"
                   "bessel_pred_0,bessel_pred_pi,residual_0,residual_pi")


def fmt17(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def scan_to_csv(cells: Sequence[ScanCell], mu: float) -> str:
    lines = [SCAN_HEADER]
    for c in cells:
        k = "" if c.k is None else str(c.k)
        locked = "true" if c.locked else "false"
        lines.append(f"{fmt17(c.a)},{fmt17(c.b)},{fmt17(mu)},"
                     f"{fmt17(c.rho)},{locked},{k}")
    return "\n".join(lines) + "\n"


def scan_from_csv(text: str) -> tuple[list[ScanCell], Optional[float]]:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != SCAN_HEADER:
        raise ValueError("not a scan CSV (unexpected header)")
    cells = []
    mu = None
    for ln in lines[1:]:
        a, b, mu_s, rho, locked, k = ln.split(",")
        mu = float(mu_s)
        cells.append(ScanCell(a=float(a), b=float(b), rho=float(rho),
                              locked=locked == "true",
                              k=int(k) if k else None))
    return cells, mu


def boundary_to_csv(points: Sequence[BoundaryPoint]) -> str:
    lines = [BOUNDARY_HEADER]
    for p in points:
        lines.append(",".join([
            str(p.k), fmt17(p.b), fmt17(p.mu), fmt17(p.a0), fmt17(p.api),
            fmt17(p.a_minus), fmt17(p.a_plus), fmt17(p.width),
            fmt17(p.bessel_pred_0), fmt17(p.bessel_pred_pi),
            fmt17(p.residual_0), fmt17(p.residual_pi)]))
    return "\n".join(lines) + "\n"


def boundary_from_csv(text: str) -> list[BoundaryPoint]:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != BOUNDARY_HEADER:
        raise ValueError("not a boundary CSV (unexpected header)")
    out = []
    for ln in lines[1:]:
        vals = ln.split(",")
        out.append(BoundaryPoint(
            k=int(vals[0]), b=float(vals[1]), mu=float(vals[2]),
            a0=float(vals[3]), api=float(vals[4]), a_minus=float(vals[5]),
            a_plus=float(vals[6]), width=float(vals[7]),
            bessel_pred_0=float(vals[8]), bessel_pred_pi=float(vals[9]),
            residual_0=float(vals[10]), residual_pi=float(vals[11])))
    return out
