"""Deterministic SVG rendering of scans and tongue boundaries.

The figure follows the usual presentation of the parameter plane:
shaded cells for phase-locked regions, solid polylines for the two
boundary curves of each tongue, dashed polylines for the Bessel
predictions k mu -+ J_k(-b/mu), and dotted vertical lines a = k mu.
Output is plain string assembly with fixed number formatting, so a given
input yields byte-identical SVG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .scan import ScanCell
from .tongue import BoundaryPoint


@dataclass(frozen=True)
class SvgStyle:
    width: int = 720
    height: int = 720
    margin: int = 64
    locked_fill: str = "#c9c9c9"
    boundary_stroke: str = "#000000"
    bessel_stroke: str = "#b03030"
    kline_stroke: str = "#707070"
    axis_stroke: str = "#000000"
    n_ticks: int = 6


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.4g}"


class _Frame:
    def __init__(self, a_lo, a_hi, b_lo, b_hi, style: SvgStyle):
        self.a_lo, self.a_hi = a_lo, a_hi
        self.b_lo, self.b_hi = b_lo, b_hi
        self.style = style
        self.plot_w = style.width - 2 * style.margin
        self.plot_h = style.height - 2 * style.margin

    def x(self, a: float) -> float:
        return (self.style.margin
                + (a - self.a_lo) / (self.a_hi - self.a_lo) * self.plot_w)

    def y(self, b: float) -> float:
        return (self.style.margin
                + (self.b_hi - b) / (self.b_hi - self.b_lo) * self.plot_h)


def _cell_steps(values: Sequence[float]) -> float:
    uniq = sorted(set(values))
    if len(uniq) < 2:
        return 1.0
    return min(v2 - v1 for v1, v2 in zip(uniq, uniq[1:]))


def _polyline(points, stroke, dash: Optional[str] = None,
              width: float = 1.2) -> str:
    if len(points) < 2:
        return ""
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline fill="none" stroke="{stroke}" '
            f'stroke-width="{width}"{dash_attr} points="{pts}"/>')


def render_svg(cells: Optional[Sequence[ScanCell]] = None,
               boundaries: Optional[Sequence[BoundaryPoint]] = None,
               mu: Optional[float] = None,
               k_lines: Optional[Sequence[int]] = None,
               style: SvgStyle = SvgStyle()) -> str:
    """Compose the SVG document; needs a scan, boundary traces, or both."""
    cells = list(cells) if cells else []
    boundaries = list(boundaries) if boundaries else []
    if not cells and not boundaries:
        raise ValueError("nothing to render")

    a_vals = [c.a for c in cells] + [p.a0 for p in boundaries] \
        + [p.api for p in boundaries]
    b_vals = [c.b for c in cells] + [p.b for p in boundaries]
    a_lo, a_hi = min(a_vals), max(a_vals)
    b_lo, b_hi = min(b_vals), max(b_vals)
    if a_hi == a_lo:
        a_lo, a_hi = a_lo - 0.5, a_hi + 0.5
    if b_hi == b_lo:
        b_lo, b_hi = b_lo - 0.5, b_hi + 0.5
    pad_a = 0.0 if cells else 0.05 * (a_hi - a_lo)
    a_lo, a_hi = a_lo - pad_a, a_hi + pad_a
    fr = _Frame(a_lo, a_hi, b_lo, b_hi, style)

    if mu is None and boundaries:
        mu = boundaries[0].mu
    if k_lines is None:
        k_lines = sorted({p.k for p in boundaries})

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" '
        f'height="{style.height}" viewBox="0 0 {style.width} '
        f'{style.height}">',
        f'<rect width="{style.width}" height="{style.height}" '
        f'fill="#ffffff"/>',
    ]

    # shaded locked cells
    if cells:
        da = _cell_steps([c.a for c in cells])
        db = _cell_steps([c.b for c in cells])
        w = abs(fr.x(a_lo + da) - fr.x(a_lo))
        h = abs(fr.y(b_lo + db) - fr.y(b_lo))
        for c in cells:
            if not c.locked:
                continue
            x = fr.x(c.a) - 0.5 * w
            y = fr.y(c.b) - 0.5 * h
            parts.append(f'<rect x="{_fmt(x)}" y="{_fmt(y)}" '
                         f'width="{_fmt(w)}" height="{_fmt(h)}" '
                         f'fill="{style.locked_fill}"/>')

    # dotted adjacency lines a = k mu
    if mu is not None:
        for k in k_lines:
            a = k * mu
            if not a_lo <= a <= a_hi:
                continue
            parts.append(_polyline([(fr.x(a), fr.y(b_lo)),
                                    (fr.x(a), fr.y(b_hi))],
                                   style.kline_stroke, dash="1.5,3",
                                   width=1.0))

    # boundary curves (solid) and Bessel predictions (dashed), per k
    by_k: dict[int, list[BoundaryPoint]] = {}
    for p in boundaries:
        by_k.setdefault(p.k, []).append(p)
    for k in sorted(by_k):
        pts = sorted(by_k[k], key=lambda p: p.b)
        for attr in ("bessel_pred_0", "bessel_pred_pi"):
            line = [(fr.x(getattr(p, attr)), fr.y(p.b)) for p in pts
                    if not math.isnan(getattr(p, attr))]
            parts.append(_polyline(line, style.bessel_stroke, dash="6,4"))
        for attr in ("a0", "api"):
            line = [(fr.x(getattr(p, attr)), fr.y(p.b)) for p in pts]
            parts.append(_polyline(line, style.boundary_stroke))

    # axes with ticks
    m = style.margin
    x0, y0 = m, style.height - m
    x1, y1 = style.width - m, m
    parts.append(_polyline([(x0, y1), (x0, y0), (x1, y0)],
                           style.axis_stroke, width=1.0))
    for i in range(style.n_ticks):
        fa = i / (style.n_ticks - 1)
        a = a_lo + fa * (a_hi - a_lo)
        xp = fr.x(a)
        parts.append(_polyline([(xp, y0), (xp, y0 + 5)], style.axis_stroke,
                               width=1.0))
        parts.append(f'<text x="{_fmt(xp)}" y="{_fmt(y0 + 18)}" '
                     f'font-size="11" text-anchor="middle">'
                     f'{_tick_label(a)}</text>')
        b = b_lo + fa * (b_hi - b_lo)
        yp = fr.y(b)
        parts.append(_polyline([(x0 - 5, yp), (x0, yp)], style.axis_stroke,
                               width=1.0))
        parts.append(f'<text x="{_fmt(x0 - 8)}" y="{_fmt(yp + 4)}" '
                     f'font-size="11" text-anchor="end">'
                     f'{_tick_label(b)}</text>')
    parts.append(f'<text x="{_fmt(0.5 * (x0 + x1))}" '
                 f'y="{_fmt(y0 + 40)}" font-size="14" '
                 f'text-anchor="middle">a</text>')
    parts.append(f'<text x="{_fmt(x0 - 40)}" y="{_fmt(0.5 * (y0 + y1))}" '
                 f'font-size="14" text-anchor="middle">b</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
