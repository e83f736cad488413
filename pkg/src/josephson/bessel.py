"""Integer-order Bessel functions, a generalized oscillatory cousin, and
their large-argument asymptotics.

Everything here is checked against the integral representation

    J_k(-z) = (1/2pi) int_0^{2pi} cos(k t + z sin t) dt,

so no external special-function tables are involved.  The generalized
variant replaces sin t by the antiderivative G of an arbitrary zero-mean
forcing g:

    Jgen_k(-z) = (1/2pi) int_0^{2pi} cos(k t + z G(t)) dt,

which reduces to J_k for g = cos.  For large z its stationary-phase
asymptotics is a sum over the (simple) zeros of g.

Sign conventions: ``bessel_j(k, z)`` is the classical function of a real
argument, so the object above is ``bessel_j(k, -z)``; the asymptotic
entry points take the positive z = b/mu orientation directly because the
boundary predictions always evaluate J_k(-b/mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainTooSmall, QuadratureStall
from .forcing import ForcingProfile

TWO_PI = 2.0 * math.pi

_SERIES_CUT = 10.0
_Z_MAX = 1.0e3
_EPS = np.finfo(float).eps

# 10-point Gauss-Legendre rule on [-1, 1]
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


@dataclass(frozen=True)
class BesselEval:
    k: int
    z: float
    value: float
    route: str  # 'series' | 'integral' | 'asymptotic'
    est_err: float


def _series_j(k: int, z: float) -> float:
    # power series around 0; k >= 0, 0 <= z <= _SERIES_CUT
    if z == 0.0:
        return 1.0 if k == 0 else 0.0
    half = 0.5 * z
    term = half ** k / math.factorial(k)
    total = term
    m = 1
    while True:
        term *= -(half * half) / (m * (m + k))
        total += term
        if abs(term) < 1e-18 * (1.0 + abs(total)) or m > 200:
            break
        m += 1
    return total


def _miller_j(k: int, z: float) -> float:
    # backward recurrence with normalization J0 + 2 sum J_{2m} = 1;
    # k >= 0, z > _SERIES_CUT
    m_start = int(z + 12.0 * z ** (1.0 / 3.0) + 14.0)
    if m_start < k + 12:
        m_start = k + 12
    f_next = 0.0
    f_curr = 1e-30
    out = f_curr if m_start == k else 0.0
    s = 2.0 * f_curr if m_start % 2 == 0 else 0.0
    for n in range(m_start, 0, -1):
        f_prev = (2.0 * n / z) * f_curr - f_next
        f_next = f_curr
        f_curr = f_prev
        if abs(f_curr) > 1e250:
            f_curr *= 1e-250
            f_next *= 1e-250
            s *= 1e-250
            out *= 1e-250
        nn = n - 1
        if nn == k:
            out = f_curr
        if nn > 0 and nn % 2 == 0:
            s += 2.0 * f_curr
    return out / (f_curr + s)


def bessel_j(k: int, z: float) -> float:
    """Classical J_k(z) for integer k, |z| <= 1e3.

    Power series for small |z|, backward recurrence with normalization
    for moderate |z|; parity reductions fix the signs so that
    bessel_j(k, -z) equals the defining integral above.
    """
    k = int(k)
    z = float(z)
    if abs(z) > _Z_MAX:
        raise ValueError(f"|z| <= {_Z_MAX:g} supported, got {z}")
    sign = 1.0
    if k < 0:
        k = -k
        if k % 2 == 1:
            sign = -sign
    if z < 0.0:
        z = -z
        if k % 2 == 1:
            sign = -sign
    if z <= _SERIES_CUT:
        return sign * _series_j(k, z)
    return sign * _miller_j(k, z)


def _adaptive_panels(f, n0: int, abs_tol: float, max_panels: int):
    """Composite 10-point Gauss on [0, 2pi] with panel doubling and a
    two-level (Richardson-style) error estimate."""

    def composite(n):
        edges = np.linspace(0.0, TWO_PI, n + 1)
        h = edges[1] - edges[0]
        mid = edges[:-1, None] + 0.5 * h * (1.0 + _GL_NODES[None, :])
        vals = f(mid.ravel()).reshape(n, _GL_NODES.size)
        return 0.5 * h * float(np.sum(vals @ _GL_WEIGHTS))

    n = max(4, n0)
    prev = composite(n)
    while True:
        n *= 2
        if n > max_panels:
            raise QuadratureStall(
                f"target {abs_tol:g} unreachable within {max_panels} panels")
        curr = composite(n)
        est = abs(curr - prev)
        if est <= abs_tol:
            return curr, est
        prev = curr


def bessel_j_integral(k: int, z: float, abs_tol: float = 1e-12,
                      max_panels: int = 1 << 19) -> float:
    """J_k(z) by direct quadrature of its defining integral.

    The starting panel count scales with the integrand's oscillation
    count |k| + |z|.
    """
    k = int(k)
    z = float(z)
    if abs(z) > _Z_MAX:
        raise ValueError(f"|z| <= {_Z_MAX:g} supported, got {z}")

    def integrand(t):
        return np.cos(k * t - z * np.sin(t))

    n0 = int(math.ceil((abs(k) + abs(z)) / 1.5)) + 8
    value, _ = _adaptive_panels(integrand, n0, abs_tol, max_panels)
    return value / TWO_PI


def gen_bessel(k: int, z: float, forcing: ForcingProfile,
               abs_tol: float = 1e-12, max_panels: int = 1 << 19) -> float:
    """Generalized Jgen_k(-z) = (1/2pi) int cos(k t + z G(t)) dt."""
    k = int(k)
    z = float(z)

    def integrand(t):
        return np.cos(k * t + z * forcing.antiderivative(t))

    n0 = int(math.ceil((abs(k) + abs(z) * max(forcing.sup_norm, 0.1)) / 1.5)) + 8
    value, _ = _adaptive_panels(integrand, n0, abs_tol, max_panels)
    return value / TWO_PI


def bessel_asymptotic(k: int, z: float) -> float:
    """Leading large-z term of J_k(-z): sqrt(2/(pi z)) cos(-z - k pi/2 + pi/4).

    Valid for z >= 5 (error O(z^{-3/2}))."""
    if z < 5.0:
        raise DomainTooSmall(f"asymptotic form needs z >= 5, got {z}")
    return math.sqrt(2.0 / (math.pi * z)) * math.cos(
        -z - 0.5 * k * math.pi + 0.25 * math.pi)


def gen_bessel_asymptotic(k: int, z: float, forcing: ForcingProfile) -> float:
    """Stationary-phase leading term of Jgen_k(-z).

    Sum over the simple zeros t_j of g on the circle:

        sum_j (2 pi z |g'(t_j)|)^{-1/2}
              * cos(z G(t_j) + k t_j + (pi/4) sgn g'(t_j)).
    """
    if z < 5.0:
        raise DomainTooSmall(f"asymptotic form needs z >= 5, got {z}")
    report = forcing.transversality_report()
    total = 0.0
    for zero in report.zeros:
        amp = 1.0 / math.sqrt(TWO_PI * z * abs(zero.slope))
        phase = (z * forcing.antiderivative(zero.t) + k * zero.t
                 + 0.25 * math.pi * math.copysign(1.0, zero.slope))
        total += amp * math.cos(phase)
    return total


def bessel_eval(k: int, z: float, route: str = "series") -> BesselEval:
    """Evaluate with an explicit route tag and an error estimate."""
    if route == "series":
        value = bessel_j(k, z)
        est = 1e-13 * (1.0 + abs(value))
    elif route == "integral":
        def integrand(t):
            return np.cos(int(k) * t - z * np.sin(t))
        n0 = int(math.ceil((abs(k) + abs(z)) / 1.5)) + 8
        raw, est = _adaptive_panels(integrand, n0, 1e-12, 1 << 19)
        value = raw / TWO_PI
        est = est / TWO_PI
    elif route == "asymptotic":
        value = bessel_asymptotic(k, z)
        est = math.sqrt(2.0 / math.pi) * abs(4.0 * k * k - 1.0) / 8.0 \
            * z ** (-1.5)
    else:
        raise ValueError(f"unknown route {route!r}")
    return BesselEval(k=int(k), z=float(z), value=value, route=route,
                      est_err=est)
