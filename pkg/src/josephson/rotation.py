"""Rotation numbers of the circle flow, with phase-lock classification.

Two routes:

* Moebius route: the monodromy matrix gives rho to machine precision.
  A non-elliptic matrix means the circle map has fixed points, so the
  flow is locked and rho equals the integer winding exactly.  An
  elliptic matrix with trace 2 cos(theta) is conjugate to the rotation
  matrix by angle theta, which rotates x = 2 arctan(u) by 2 theta, so
  the fractional part of rho is theta/pi; the sign is fixed by a single
  application of the lifted map at 0.

* Iterated route: one long integration over n forcing periods, with the
  first half discarded as transient; the quotient estimates rho with
  error below 2/n (the displacement of a lift over m periods differs
  from 2*pi*m*rho by less than 2*pi).  This route assumes nothing about
  the Moebius structure and serves as the independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import NotMoebius
from .flow import DEFAULT_CONFIG, IntegratorConfig, Params, integrate_flow
from .forcing import ForcingProfile
from .moebius import MoebiusMap, monodromy

TWO_PI = 2.0 * math.pi

# |trace| >= 2 - LOCK_TOL counts as locked: the parabolic boundary is a
# codimension-one set and numerics need a band around it.
LOCK_TOL = 1e-8


@dataclass(frozen=True)
class RotationNumber:
    value: float
    locked: bool
    k: Optional[int]
    method: str  # 'moebius' | 'iterated'


def rotation_number_from_map(M: MoebiusMap) -> RotationNumber:
    """Rotation number of an already-computed monodromy map.

    Elliptic case: the matrix is conjugate to the rotation by the signed
    angle Theta with 2 cos Theta = trace, and the circle action rotates
    by -2*Theta.  The magnitude of Theta mod pi is arccos(trace/2); its
    direction is the (conjugation-invariant) sign of m21 - m12, because
    for M = C R(Theta) C^-1 one computes m21 - m12 = sin(Theta) *
    trace(C^T C) with positive trace factor.  The candidate fraction
    -sign(m21-m12) * theta/pi is then shifted by +-1 onto the side of
    zero matching the lift displacement at 0, which pins it against the
    stored winding.
    """
    tr = M.trace
    if abs(tr) >= 2.0 - LOCK_TOL:
        return RotationNumber(value=float(M.winding), locked=True,
                              k=M.winding, method="moebius")
    theta = math.acos(max(-1.0, min(1.0, 0.5 * tr)))
    frac = -math.copysign(theta / math.pi, M.m21 - M.m12)
    p0 = M.base_displacement()
    if p0 > 0.0 and frac < 0.0:
        frac += 1.0
    elif p0 < 0.0 and frac > 0.0:
        frac -= 1.0
    return RotationNumber(value=M.winding + frac, locked=False,
                          k=None, method="moebius")


def rotation_number(p: Params, forcing: ForcingProfile,
                    cfg: IntegratorConfig = DEFAULT_CONFIG) -> RotationNumber:
    """Exact-route rotation number via the monodromy matrix.

    Requires gamma = 1.  Locked values are reported as exact integers.
    """
    if p.gamma != 1.0:
        raise NotMoebius("the Moebius route requires gamma = 1")
    return rotation_number_from_map(monodromy(p, forcing, cfg))


def rotation_number_iterated(p: Params, forcing: ForcingProfile,
                             n_periods: int,
                             cfg: IntegratorConfig = DEFAULT_CONFIG,
                             x0: float = 0.0) -> RotationNumber:
    """Oracle route: long integration over n_periods forcing periods.

    The first half of the run is discarded as transient, which makes
    locked cases converge to the integer at the attractor's exponential
    rate instead of O(1/n); elliptic cases keep the O(1/n) bound.  Works
    for any gamma.
    """
    if n_periods < 1:
        raise ValueError("n_periods must be >= 1")
    n_burn = n_periods // 2
    n_meas = n_periods - n_burn
    t_mid = TWO_PI * n_burn
    t_end = TWO_PI * n_periods
    x_mid = x0
    if n_burn > 0:
        x_mid = integrate_flow(p, forcing, x0, 0.0, t_mid, cfg).x1
    arc = integrate_flow(p, forcing, x_mid, t_mid, t_end, cfg)
    value = (arc.x1 - x_mid) / (TWO_PI * n_meas)
    return RotationNumber(value=value, locked=False, k=None,
                          method="iterated")


def lifted_poincare(p: Params, forcing: ForcingProfile, x: float,
                    cfg: IntegratorConfig = DEFAULT_CONFIG) -> float:
    """Direct-integration value of the lifted Poincare map at x."""
    return integrate_flow(p, forcing, x, 0.0, TWO_PI, cfg).x1


__all__ = ["RotationNumber", "rotation_number", "rotation_number_from_map",
           "rotation_number_iterated", "lifted_poincare", "LOCK_TOL"]
