"""The driven circle-flow family and its high-accuracy time stepping.

The equation is

    dx/dt = (gamma * cos x + a + b * g(t)) / mu

on the universal cover: x lives on the real line throughout, and is only
reduced mod 2*pi at presentation boundaries.  gamma = 1 is the standard
Josephson drive; gamma = 0 makes the flow integrable with closed form
x(t) = x(0) + (a t + b G(t)) / mu, which every accuracy test leans on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import StepUnderflow
from .forcing import ForcingProfile

TWO_PI = 2.0 * math.pi

# Supported parameter envelope (desk-scale scope).  Outside it the stepper
# is allowed to fail with StepUnderflow.
ENVELOPE_MU = (0.05, 10.0)
ENVELOPE_B_MAX = 1.0e3


def in_envelope(a: float, b: float, mu: float) -> bool:
    return (ENVELOPE_MU[0] <= mu <= ENVELOPE_MU[1]
            and abs(b) <= ENVELOPE_B_MAX
            and abs(a) <= 1.0 + abs(b) + 10.0 * mu)


@dataclass(frozen=True)
class Params:
    """Parameter triple (a, b, mu) plus the autonomous-term weight gamma.

    b >= 0 is the convention for public boundary/tongue operations, but
    negative b is accepted (it is a half-period time shift of the drive).
    """

    a: float
    b: float
    mu: float
    gamma: float = 1.0

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not abs(self.gamma) <= 1.0:
            raise ValueError(f"|gamma| must be <= 1, got {self.gamma}")


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and step guards for the embedded 5(4) pair."""

    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_step: float = TWO_PI
    min_step: float = 1e-13
    order: int = 5
    max_steps: int = 60_000_000

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if not self.min_step < self.max_step:
            raise ValueError("min_step must be below max_step")
        if self.order != 5:
            raise ValueError("only the built-in 5(4) pair is available")


DEFAULT_CONFIG = IntegratorConfig()


@dataclass(frozen=True)
class SolutionArc:
    """One integrated arc of the lifted flow.

    osc is the accumulated integral of cos x over [t0, t1], computed by
    the same stepper as x itself, so the integral identity

        x1 - x0 = (a (t1-t0) + b (G(t1)-G(t0)) + gamma * osc) / mu

    holds to within the integration tolerance.
    """

    t0: float
    t1: float
    x0: float
    x1: float
    osc: float
    steps: int

    def identity_defect(self, p: Params, forcing: ForcingProfile) -> float:
        """Residual of the integral identity (diagnostic)."""
        dG = forcing.antiderivative(self.t1) - forcing.antiderivative(self.t0)
        rhs = (p.a * (self.t1 - self.t0) + p.b * dG + p.gamma * self.osc) / p.mu
        return abs((self.x1 - self.x0) - rhs)


def step_cap(p: Params, forcing: ForcingProfile) -> float:
    """Cap on the step so no step advances x by more than ~pi/4.

    Winding is tracked continuously, so steps must resolve the fast
    rotation at large b/mu.
    """
    speed = abs(p.a) + abs(p.b) * max(1.0, forcing.sup_norm) + 1.0
    return TWO_PI * p.mu / (8.0 * speed)


def rhs_eval(p: Params, forcing: ForcingProfile, x: float, t: float) -> float:
    """Right-hand side (gamma cos x + a + b g(t)) / mu."""
    return (p.gamma * math.cos(x) + p.a + p.b * forcing(t)) / p.mu


def _run_kernel(mode, y, t0, t1, p, forcing, cfg):
    hmax = min(cfg.max_step, step_cap(p, forcing))
    status, steps, osc_lo, osc_hi = _kernels.integrate(
        mode, y, t0, t1, p.a, p.b, p.mu, p.gamma,
        forcing.cos_array, forcing.sin_array,
        cfg.rel_tol, cfg.abs_tol, hmax, cfg.min_step, cfg.max_steps)
    if status == _kernels.STATUS_UNDERFLOW:
        raise StepUnderflow(
            f"step below min_step={cfg.min_step:g} at (a={p.a:g}, b={p.b:g}, "
            f"mu={p.mu:g}); parameters outside supported stiffness range")
    if status == _kernels.STATUS_BUDGET:
        raise StepUnderflow(
            f"step budget {cfg.max_steps} exhausted at (a={p.a:g}, b={p.b:g}, "
            f"mu={p.mu:g})")
    return steps, osc_lo, osc_hi


def integrate_flow(p: Params, forcing: ForcingProfile, x0: float,
                   t0: float, t1: float,
                   cfg: IntegratorConfig = DEFAULT_CONFIG) -> SolutionArc:
    """Integrate the lifted flow from (t0, x0) to t1.

    Deterministic for fixed inputs.  Raises StepUnderflow when the
    required step drops below cfg.min_step.
    """
    y = np.array([x0, 0.0], dtype=np.float64)
    steps, _, _ = _run_kernel(_kernels.MODE_FLOW, y, t0, t1, p, forcing, cfg)
    return SolutionArc(t0=t0, t1=t1, x0=x0, x1=float(y[0]),
                       osc=float(y[1]), steps=steps)


def osc_extrema(p: Params, forcing: ForcingProfile, x0: float,
                t0: float, t1: float,
                cfg: IntegratorConfig = DEFAULT_CONFIG):
    """Running extrema of int_t0^t cos x over the arc (diagnostic for the
    oscillation-integral checks).  Returns (osc_lo, osc_hi, arc)."""
    y = np.array([x0, 0.0], dtype=np.float64)
    steps, osc_lo, osc_hi = _run_kernel(_kernels.MODE_FLOW, y, t0, t1,
                                        p, forcing, cfg)
    arc = SolutionArc(t0=t0, t1=t1, x0=x0, x1=float(y[0]),
                      osc=float(y[1]), steps=steps)
    return osc_lo, osc_hi, arc


def autonomous_rho(a: float, mu: float) -> float:
    """Closed-form rotation number for b = 0.

    The autonomous equation locks (rho = 0) for |a| <= 1 and otherwise
    traverses the circle in time 2*pi*mu/sqrt(a^2-1).
    """
    if not mu > 0.0:
        raise ValueError("mu must be positive")
    if abs(a) <= 1.0:
        return 0.0
    return math.copysign(math.sqrt(a * a - 1.0) / mu, a)
