"""Arnold-tongue boundary curves, tongue intervals, and adjacency points.

For fixed (k, b, mu) the two boundary values solve

    F0(a)  = P(a; 0)  - 2 pi k       = 0        (fixed point at x = 0)
    Fpi(a) = P(a; pi) - pi - 2 pi k  = 0        (fixed point at x = pi)

where P(a; x) is the lifted Poincare map.  Both F's are strictly
increasing in a (the right-hand side of the flow is), so each has exactly
one root: bracket around a = k mu, expand until the sign changes, then
polish with Brent's method.  Which root is the left tongue end swaps at
adjacency points, so the labeled values and the sorted interval are kept
separately.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from scipy.optimize import brentq

from .bessel import bessel_j
from .errors import BracketFailure, JosephsonError
from .flow import DEFAULT_CONFIG, IntegratorConfig, Params
from .forcing import ForcingProfile
from .moebius import MoebiusMap, apply_lifted, identity_defect, monodromy

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# below this amplitude the tongue degenerates to its b = 0 endpoint and
# root-finding is ill-conditioned; report the closed form instead
B_CLOSED_FORM = 0.01

_BESSEL_Z_MAX = 1.0e3


@dataclass(frozen=True)
class BoundaryPoint:
    """Both boundary values of the k-th tongue at one (b, mu), with the
    Bessel predictions k mu -+ J_k(-b/mu) and their residuals."""

    k: int
    b: float
    mu: float
    a0: float
    api: float
    a_minus: float
    a_plus: float
    width: float
    bessel_pred_0: float
    bessel_pred_pi: float
    residual_0: float
    residual_pi: float
    closed_form: bool = False


@dataclass(frozen=True)
class AdjacencyPoint:
    """Amplitude where the two boundary curves meet (zero tongue width);
    the Poincare map there is +-identity."""

    k: int
    mu: float
    b_star: float
    a_star: float
    identity_defect: float


@dataclass(frozen=True)
class BoundaryTrace:
    points: tuple[BoundaryPoint, ...]
    failures: tuple[tuple[float, str], ...]


class _BoundaryFun:
    """F(a) for one target phase, caching the monodromy at the last a."""

    def __init__(self, target_x: float, k: int, b: float, mu: float,
                 forcing: ForcingProfile, cfg: IntegratorConfig):
        self.target_x = target_x
        self.k = k
        self.b = b
        self.mu = mu
        self.forcing = forcing
        self.cfg = cfg
        self.last: Optional[tuple[float, MoebiusMap]] = None

    def map_at(self, a: float) -> MoebiusMap:
        if self.last is not None and self.last[0] == a:
            return self.last[1]
        M = monodromy(Params(a=a, b=self.b, mu=self.mu), self.forcing,
                      self.cfg)
        self.last = (a, M)
        return M

    def __call__(self, a: float) -> float:
        M = self.map_at(a)
        return (apply_lifted(M, self.target_x) - self.target_x
                - TWO_PI * self.k)


def _expand_bracket(f, center: float, half: float, max_doublings: int = 20):
    lo, hi = center - half, center + half
    flo, fhi = f(lo), f(hi)
    for _ in range(max_doublings):
        if flo == 0.0:
            return lo, lo
        if fhi == 0.0:
            return hi, hi
        if flo * fhi < 0.0:
            return lo, hi
        half *= 2.0
        lo, hi = center - half, center + half
        flo, fhi = f(lo), f(hi)
    raise BracketFailure(
        f"no sign change around {center:g} after {max_doublings} doublings")


def _root(f, lo: float, hi: float, tol_a: float) -> float:
    if lo == hi:
        return lo
    return float(brentq(f, lo, hi, xtol=tol_a, rtol=8.9e-16, maxiter=200))


def _solve_boundary(fun: _BoundaryFun, tol_a: float,
                    warm: Optional[float]) -> float:
    center = fun.k * fun.mu
    if warm is not None:
        for half in (2e-3, 3e-2):
            lo, hi = warm - half, warm + half
            if fun(lo) * fun(hi) < 0.0:
                return _root(fun, lo, hi, tol_a)
    half0 = 2.0 / math.sqrt(abs(fun.b) * fun.mu) + 0.5
    lo, hi = _expand_bracket(fun, center, half0)
    return _root(fun, lo, hi, tol_a)


def _predictions(k: int, b: float, mu: float):
    z = b / mu
    if abs(z) > _BESSEL_Z_MAX:
        return math.nan, math.nan
    jk = bessel_j(k, -z)
    return k * mu - jk, k * mu + jk


def boundary_at(k: int, b: float, mu: float,
                cfg: IntegratorConfig = DEFAULT_CONFIG,
                tol_a: float = 5e-15,
                forcing: Optional[ForcingProfile] = None,
                _warm: Optional[tuple[float, float]] = None) -> BoundaryPoint:
    """Locate both boundary values of the k-th tongue at (b, mu).

    For b below B_CLOSED_FORM the point degenerates to the closed-form
    b = 0 endpoint, which is reported directly with closed_form=True.
    """
    if b < 0.0:
        raise ValueError("boundary_at expects b >= 0")
    forcing = forcing if forcing is not None else ForcingProfile.cosine()
    pred0, predpi = _predictions(k, b, mu)
    if b < B_CLOSED_FORM:
        if k == 0:
            a0, api = -1.0, 1.0
        else:
            a0 = api = math.copysign(math.sqrt(k * k * mu * mu + 1.0), k)
        return BoundaryPoint(
            k=k, b=b, mu=mu, a0=a0, api=api,
            a_minus=min(a0, api), a_plus=max(a0, api),
            width=abs(api - a0),
            bessel_pred_0=pred0, bessel_pred_pi=predpi,
            residual_0=abs(a0 - pred0), residual_pi=abs(api - predpi),
            closed_form=True)

    f0 = _BoundaryFun(0.0, k, b, mu, forcing, cfg)
    fpi = _BoundaryFun(math.pi, k, b, mu, forcing, cfg)
    w0, wpi = _warm if _warm is not None else (None, None)
    a0 = _solve_boundary(f0, tol_a, w0)
    api = _solve_boundary(fpi, tol_a, wpi)
    return BoundaryPoint(
        k=k, b=b, mu=mu, a0=a0, api=api,
        a_minus=min(a0, api), a_plus=max(a0, api),
        width=abs(api - a0),
        bessel_pred_0=pred0, bessel_pred_pi=predpi,
        residual_0=abs(a0 - pred0), residual_pi=abs(api - predpi))


def trace_boundary(k: int, b_grid: Sequence[float], mu: float,
                   cfg: IntegratorConfig = DEFAULT_CONFIG,
                   tol_a: float = 5e-15,
                   forcing: Optional[ForcingProfile] = None) -> BoundaryTrace:
    """boundary_at over an increasing amplitude grid with warm-started
    brackets (continuation).  Per-node failures are recorded, not fatal."""
    points = []
    failures = []
    warm = None
    for b in b_grid:
        try:
            pt = boundary_at(k, b, mu, cfg, tol_a, forcing, _warm=warm)
        except JosephsonError as exc:
            failures.append((float(b), str(exc)))
            logger.warning("boundary trace failed at b=%g: %s", b, exc)
            warm = None
            continue
        points.append(pt)
        warm = None if pt.closed_form else (pt.a0, pt.api)
    return BoundaryTrace(points=tuple(points), failures=tuple(failures))


def find_adjacencies(k: int, b_range: tuple[float, float], mu: float,
                     cfg: IntegratorConfig = DEFAULT_CONFIG,
                     tol_a: float = 5e-15,
                     scan_step: Optional[float] = None,
                     forcing: Optional[ForcingProfile] = None
                     ) -> list[AdjacencyPoint]:
    """Adjacency points (zero tongue width) with b in b_range.

    Scans the signed width a0 - api on a grid fine enough to separate
    consecutive zeros (spacing ~ pi mu), then polishes each sign change
    by a Brent solve in b.  The polished objective reuses the monodromy
    already computed at the a0 root, so each b-evaluation costs a single
    one-dimensional root-find.
    """
    forcing = forcing if forcing is not None else ForcingProfile.cosine()
    b_lo, b_hi = b_range
    if b_lo < B_CLOSED_FORM:
        raise ValueError("adjacency scan needs b_range above the "
                         "degenerate-amplitude band")
    step = scan_step if scan_step is not None else math.pi * mu / 6.0
    n = max(2, int(math.ceil((b_hi - b_lo) / step)) + 1)
    bs = [b_lo + i * (b_hi - b_lo) / (n - 1) for i in range(n)]

    warm_a0 = [None]

    def signed_width(b: float) -> float:
        # F_pi evaluated at the a0 root: same sign as a0 - api because
        # F_pi is increasing in a with root api.
        f0 = _BoundaryFun(0.0, k, b, mu, forcing, cfg)
        a0 = _solve_boundary(f0, tol_a, warm_a0[0])
        warm_a0[0] = a0
        M = f0.map_at(a0)
        return apply_lifted(M, math.pi) - math.pi - TWO_PI * k

    values = [signed_width(b) for b in bs]
    out = []
    for i in range(n - 1):
        va, vb = values[i], values[i + 1]
        if va == 0.0:
            b_star = bs[i]
        elif va * vb < 0.0:
            b_star = float(brentq(signed_width, bs[i], bs[i + 1],
                                  xtol=1e-9, rtol=8.9e-16, maxiter=200))
        else:
            continue
        pt = boundary_at(k, b_star, mu, cfg, tol_a, forcing)
        M = monodromy(Params(a=pt.a0, b=b_star, mu=mu), forcing, cfg)
        out.append(AdjacencyPoint(k=k, mu=mu, b_star=b_star,
                                  a_star=0.5 * (pt.a0 + pt.api),
                                  identity_defect=identity_defect(M)))
    return out
