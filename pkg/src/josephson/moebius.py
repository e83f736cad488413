"""Exact Poincare map of the circle flow as a Moebius transformation.

The substitution u = tan(x/2) turns dx/dt = (cos x + a + b g(t))/mu into
the Riccati equation 2 mu u' = (1 + a + b g(t)) + (a + b g(t) - 1) u^2,
which is the projective action of the trace-free linear system

    v' = A(t) v,   A12 = (a + b g + 1)/(2 mu),  A21 = -(a + b g - 1)/(2 mu).

Integrating v over one forcing period gives the monodromy matrix M; the
period map of the circle is the induced Moebius action of M, and its lift
is fixed by one integer winding extracted from a reference trajectory
integrated by the same stepper over the same steps.

Because A is trace-free, det M = 1 exactly; the numerical determinant
drift doubles as an integration-accuracy monitor (away from strongly
hyperbolic parameters, where |det - 1| is dominated by cancellation noise
of order eps * ||M||^2 rather than by stepping error).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DeterminantDrift, JosephsonError, NotMoebius
from .flow import DEFAULT_CONFIG, IntegratorConfig, Params, step_cap
from .forcing import ForcingProfile

TWO_PI = 2.0 * math.pi

# classification bands
TOL_IDENTITY = 1e-8
TOL_TRACE = 1e-8

# hard failure threshold for determinant drift beyond cancellation noise
DRIFT_FAIL = 1e-6


def _wrap_pm_pi(theta: float) -> float:
    """Wrap to (-pi, pi]."""
    return theta - TWO_PI * math.ceil((theta - math.pi) / TWO_PI)


@dataclass(frozen=True)
class MoebiusMap:
    """Unit-determinant monodromy plus the winding of its lift.

    The lifted Poincare map is apply_lifted(self, x): the Moebius circle
    action of the matrix, lifted continuously and offset by
    2*pi*winding.
    """

    m11: float
    m12: float
    m21: float
    m22: float
    winding: int
    det_drift: float = 0.0

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def base_displacement(self) -> float:
        """Lift displacement at x = 0, in (-pi, pi]."""
        return _wrap_pm_pi(2.0 * math.atan2(self.m12, self.m22))

    def to_json(self) -> str:
        return json.dumps({"m": [[self.m11, self.m12], [self.m21, self.m22]],
                           "winding": self.winding,
                           "det_drift": self.det_drift})

    @classmethod
    def from_json(cls, text: str) -> "MoebiusMap":
        doc = json.loads(text)
        (m11, m12), (m21, m22) = doc["m"]
        return cls(m11=m11, m12=m12, m21=m21, m22=m22,
                   winding=int(doc["winding"]),
                   det_drift=float(doc.get("det_drift", 0.0)))


def monodromy(p: Params, forcing: ForcingProfile,
              cfg: IntegratorConfig = DEFAULT_CONFIG, *,
              periods: int = 1) -> MoebiusMap:
    """Monodromy of the linearized system over [0, 2*pi*periods].

    Requires gamma = 1 (the Moebius structure exists only for the pure
    cosine nonlinearity).  The reference solution x(0) = 0 rides along in
    the same augmented state, so the winding comes from the identical
    step sequence.
    """
    if p.gamma != 1.0:
        raise NotMoebius(f"monodromy requires gamma = 1, got {p.gamma}")
    y = np.array([1.0, 0.0, 0.0, 1.0, 0.0, 0.0], dtype=np.float64)
    hmax = min(cfg.max_step, step_cap(p, forcing))
    status, _, _, _ = _kernels.integrate(
        _kernels.MODE_MONODROMY, y, 0.0, TWO_PI * periods,
        p.a, p.b, p.mu, p.gamma, forcing.cos_array, forcing.sin_array,
        cfg.rel_tol, cfg.abs_tol, hmax, cfg.min_step, cfg.max_steps)
    if status != _kernels.STATUS_OK:
        from .errors import StepUnderflow
        raise StepUnderflow(
            f"monodromy integration failed at (a={p.a:g}, b={p.b:g}, "
            f"mu={p.mu:g})")

    m11, m12, m21, m22, x_ref = y[0], y[1], y[2], y[3], y[4]
    det = m11 * m22 - m12 * m21
    drift = abs(det - 1.0)
    # absolute rounding scale of the determinant itself
    noise = np.finfo(float).eps * (abs(m11 * m22) + abs(m12 * m21))
    if det <= 0.0 or drift > 0.5:
        raise DeterminantDrift(
            f"determinant {det:g} unusable at (a={p.a:g}, b={p.b:g}, "
            f"mu={p.mu:g})")
    if drift > DRIFT_FAIL + 64.0 * noise:
        raise DeterminantDrift(
            f"det drift {drift:.3e} exceeds accuracy gate at (a={p.a:g}, "
            f"b={p.b:g}, mu={p.mu:g})")
    s = math.sqrt(det)
    m11, m12, m21, m22 = m11 / s, m12 / s, m21 / s, m22 / s

    p0 = _wrap_pm_pi(2.0 * math.atan2(m12, m22))
    w = round((x_ref - p0) / TWO_PI)
    if abs(x_ref - (p0 + TWO_PI * w)) > 1e-5:
        raise JosephsonError(
            f"winding extraction inconsistent: reference endpoint "
            f"{x_ref:.12g} vs matrix displacement {p0:.12g}")
    return MoebiusMap(m11=float(m11), m12=float(m12), m21=float(m21),
                      m22=float(m22), winding=int(w), det_drift=float(drift))


def apply_lifted(M: MoebiusMap, x: float) -> float:
    """Evaluate the lifted Poincare map at a lifted phase x.

    The circle point is applied in the projective chart (so poles of
    tan(x/2) are harmless), and the branch of 2*arctan is pinned by the
    displacement at 0, which makes the lift continuous, increasing, and
    2*pi-equivariant; the result is offset by 2*pi*winding.
    """
    n = math.floor(x / TWO_PI)
    xr = x - TWO_PI * n
    s = math.sin(0.5 * xr)
    c = math.cos(0.5 * xr)
    num = M.m11 * s + M.m12 * c
    den = M.m21 * s + M.m22 * c
    base = 2.0 * math.atan2(num, den)
    p0 = M.base_displacement()
    y = p0 + (base - p0) % TWO_PI
    return y + TWO_PI * (n + M.winding)


def classify(M: MoebiusMap, tol_id: float = TOL_IDENTITY,
             tol_tr: float = TOL_TRACE) -> str:
    """One of 'identity', 'elliptic', 'parabolic', 'hyperbolic'."""
    if identity_defect(M) <= tol_id:
        return "identity"
    tr = abs(M.trace)
    if tr < 2.0 - tol_tr:
        return "elliptic"
    if tr > 2.0 + tol_tr:
        return "hyperbolic"
    return "parabolic"


def identity_defect(M: MoebiusMap) -> float:
    """max-entry distance of M from +I or -I, whichever is closer."""
    d_plus = max(abs(M.m11 - 1.0), abs(M.m12), abs(M.m21), abs(M.m22 - 1.0))
    d_minus = max(abs(M.m11 + 1.0), abs(M.m12), abs(M.m21), abs(M.m22 + 1.0))
    return min(d_plus, d_minus)


@dataclass(frozen=True)
class FixedPoint:
    x: float              # circle position in [0, 2*pi)
    multiplier: float     # derivative of the circle map there
    stability: str        # 'attracting' | 'repelling' | 'neutral'


@dataclass(frozen=True)
class FixedPointSet:
    all_fixed: bool
    points: tuple[FixedPoint, ...]


def fixed_points(M: MoebiusMap) -> FixedPointSet:
    """Circle fixed points of the Moebius action, with stability.

    Fixed directions are the real eigenvectors of the matrix; the circle
    map derivative at the fixed point of eigenvalue lam is 1/lam^2.
    Identity maps return the all-fixed sentinel; elliptic maps have no
    fixed points.
    """
    if identity_defect(M) <= TOL_IDENTITY:
        return FixedPointSet(all_fixed=True, points=())
    tr = M.trace
    disc = tr * tr - 4.0
    if disc < 0.0:
        if abs(tr) < 2.0 - TOL_TRACE:
            return FixedPointSet(all_fixed=False, points=())
        disc = 0.0  # parabolic band: rounding pushed the discriminant negative
    sq = math.sqrt(disc)
    if tr >= 0.0:
        lam_big = 0.5 * (tr + sq)
    else:
        lam_big = 0.5 * (tr - sq)
    lams = [lam_big] if sq == 0.0 else [lam_big, 1.0 / lam_big]
    pts = []
    seen = []
    for lam in lams:
        v1, v2 = M.m12, lam - M.m11
        w1, w2 = lam - M.m22, M.m21
        if math.hypot(w1, w2) > math.hypot(v1, v2):
            v1, v2 = w1, w2
        if v1 == 0.0 and v2 == 0.0:
            continue
        x = 2.0 * math.atan2(v1, v2)
        x %= TWO_PI
        if any(abs(_wrap_pm_pi(x - xs)) < 1e-12 for xs in seen):
            continue
        seen.append(x)
        mult = 1.0 / (lam * lam)
        if mult < 1.0 - 1e-9:
            stab = "attracting"
        elif mult > 1.0 + 1e-9:
            stab = "repelling"
        else:
            stab = "neutral"
        pts.append(FixedPoint(x=x, multiplier=mult, stability=stab))
    return FixedPointSet(all_fixed=False, points=tuple(pts))
