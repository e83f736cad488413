"""Jitted Dormand-Prince 5(4) stepper for the circle flow and its 2x2
linearization.

One embedded explicit pair with proportional-integral step control serves
both state layouts:

    flow mode       y = (x, osc)
    monodromy mode  y = (m11, m12, m21, m22, x_ref, osc)

where osc accumulates the running integral of cos x along the same steps
(so the accumulator sees exactly the accepted solution), and the matrix
block integrates M' = A(t) M with the trace-free generator

    A12 = (a + b g(t) + 1) / (2 mu),   A21 = -(a + b g(t) - 1) / (2 mu),
    A11 = A22 = 0.

Kernels release the GIL, so grid scans parallelize with plain threads.
"""

import math

import numpy as np
from numba import njit

MODE_FLOW = 0
MODE_MONODROMY = 1

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_BUDGET = 2

# Dormand-Prince 5(4) tableau (FSAL)
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (19372.0 / 6561.0, -25360.0 / 2187.0,
                          64448.0 / 6561.0, -212.0 / 729.0)
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0,
                                46732.0 / 5247.0, 49.0 / 176.0,
                                -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = (35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0,
                           -2187.0 / 6784.0, 11.0 / 84.0)
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0,
                                71.0 / 1920.0, -17253.0 / 339200.0,
                                22.0 / 525.0, -1.0 / 40.0)

_SAFETY = 0.9
_FAC_MIN = 0.2
_FAC_MAX = 6.0
# PI controller gains for a 5th-order pair
_K_P = 0.7 / 5.0
_K_I = 0.4 / 5.0


@njit(inline="always")
def _g_eval(t, ccos, csin):
    g = 0.0
    for n in range(ccos.size):
        g += ccos[n] * math.cos((n + 1) * t)
    for n in range(csin.size):
        g += csin[n] * math.sin((n + 1) * t)
    return g


@njit(inline="always")
def _rhs(mode, t, y, out, a, b, mu, gamma, ccos, csin):
    drive = a + b * _g_eval(t, ccos, csin)
    if mode == MODE_FLOW:
        cx = math.cos(y[0])
        out[0] = (gamma * cx + drive) / mu
        out[1] = cx
    else:
        p = (drive + 1.0) / (2.0 * mu)
        q = -(drive - 1.0) / (2.0 * mu)
        out[0] = p * y[2]
        out[1] = p * y[3]
        out[2] = q * y[0]
        out[3] = q * y[1]
        cx = math.cos(y[4])
        out[4] = (cx + drive) / mu
        out[5] = cx


@njit(cache=True, nogil=True)
def integrate(mode, y, t0, t1, a, b, mu, gamma, ccos, csin,
              rtol, atol, hmax, hmin, max_steps):
    """Advance y from t0 to t1 in place.

    Returns (status, accepted_steps, osc_lo, osc_hi) where osc_lo/hi are
    the running extrema of the osc component at accepted step ends.
    """
    n = y.size
    osc_idx = 1 if mode == MODE_FLOW else 5

    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    k5 = np.empty(n)
    k6 = np.empty(n)
    k7 = np.empty(n)
    ytmp = np.empty(n)
    ynew = np.empty(n)

    dirn = 1.0 if t1 >= t0 else -1.0
    span = abs(t1 - t0)
    if span == 0.0:
        return STATUS_OK, 0, y[osc_idx], y[osc_idx]

    t = t0
    tcomp = 0.0  # Kahan compensation for the time accumulator
    h = min(hmax, span) * 0.1

    _rhs(mode, t, y, k1, a, b, mu, gamma, ccos, csin)

    osc_lo = y[osc_idx]
    osc_hi = y[osc_idx]
    err_prev = 1e-4
    rejected = False
    steps = 0
    attempts = 0

    while (t1 - t) * dirn > 0.0:
        attempts += 1
        if attempts > max_steps:
            return STATUS_BUDGET, steps, osc_lo, osc_hi
        remaining = abs(t1 - t)
        last = h >= remaining
        if last:
            h = remaining
        elif h < hmin or t + dirn * h == t:
            return STATUS_UNDERFLOW, steps, osc_lo, osc_hi
        hs = dirn * h

        for i in range(n):
            ytmp[i] = y[i] + hs * _A21 * k1[i]
        _rhs(mode, t + _C2 * hs, ytmp, k2, a, b, mu, gamma, ccos, csin)
        for i in range(n):
            ytmp[i] = y[i] + hs * (_A31 * k1[i] + _A32 * k2[i])
        _rhs(mode, t + _C3 * hs, ytmp, k3, a, b, mu, gamma, ccos, csin)
        for i in range(n):
            ytmp[i] = y[i] + hs * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
        _rhs(mode, t + _C4 * hs, ytmp, k4, a, b, mu, gamma, ccos, csin)
        for i in range(n):
            ytmp[i] = y[i] + hs * (_A51 * k1[i] + _A52 * k2[i]
                                   + _A53 * k3[i] + _A54 * k4[i])
        _rhs(mode, t + _C5 * hs, ytmp, k5, a, b, mu, gamma, ccos, csin)
        for i in range(n):
            ytmp[i] = y[i] + hs * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                                   + _A64 * k4[i] + _A65 * k5[i])
        _rhs(mode, t + hs, ytmp, k6, a, b, mu, gamma, ccos, csin)
        for i in range(n):
            ynew[i] = y[i] + hs * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                                   + _B5 * k5[i] + _B6 * k6[i])
        _rhs(mode, t + hs, ynew, k7, a, b, mu, gamma, ccos, csin)

        errsq = 0.0
        for i in range(n):
            e = hs * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i]
                      + _E5 * k5[i] + _E6 * k6[i] + _E7 * k7[i])
            ay = abs(y[i])
            an = abs(ynew[i])
            sc = atol + rtol * (ay if ay > an else an)
            errsq += (e / sc) * (e / sc)
        err = math.sqrt(errsq / n)

        if err <= 1.0:
            # Kahan-compensated t += hs keeps the forcing phase exact over
            # multi-million-step runs.
            yk = hs - tcomp
            tnew = t + yk
            tcomp = (tnew - t) - yk
            t = tnew
            if last:
                t = t1
            for i in range(n):
                y[i] = ynew[i]
                k1[i] = k7[i]
            steps += 1
            if y[osc_idx] < osc_lo:
                osc_lo = y[osc_idx]
            if y[osc_idx] > osc_hi:
                osc_hi = y[osc_idx]
            if err < 1e-20:
                err = 1e-20
            fac = _SAFETY * err ** (-_K_P) * err_prev ** _K_I
            if fac > _FAC_MAX:
                fac = _FAC_MAX
            if fac < _FAC_MIN:
                fac = _FAC_MIN
            if rejected:
                fac = min(fac, 1.0)
            h = min(h * fac, hmax)
            err_prev = err
            rejected = False
        else:
            fac = _SAFETY * err ** (-0.2)
            if fac < _FAC_MIN:
                fac = _FAC_MIN
            h *= fac
            rejected = True

    return STATUS_OK, steps, osc_lo, osc_hi
