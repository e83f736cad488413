"""Periodic forcing profiles as finite Fourier data.

A profile represents a zero-mean 2*pi-periodic drive

    g(t) = sum_n c_n cos(n t) + s_n sin(n t),      n = 1, 2, ...

Keeping g as a trigonometric polynomial buys three exact operations that
matter downstream: the antiderivative G(t) = int_0^t g is termwise exact
(so G(2*pi) = 0 holds to machine precision), evenness is a data property
(all sine coefficients zero), and mean removal is just dropping the
constant term.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateForcing

# Simple-zero threshold: a zero of g with |g'| at or below this is treated
# as non-transversal.
SIMPLE_ZERO_SLOPE = 1e-8

_ZERO_RESIDUAL = 1e-12


@dataclass(frozen=True)
class ForcingZero:
    """A zero t of g on [0, 2*pi) together with the slope g'(t)."""

    t: float
    slope: float


@dataclass(frozen=True)
class TransversalityReport:
    zeros: tuple[ForcingZero, ...]
    lipschitz: float
    is_even: bool


@dataclass(frozen=True)
class ForcingProfile:
    """Zero-mean trigonometric forcing with precomputed metadata.

    ``cos_coeffs[i]`` / ``sin_coeffs[i]`` weight harmonic ``i + 1``; the
    constant term is absent by construction.  ``lipschitz`` bounds |g'|,
    ``sup_norm`` bounds |g| (both by coefficient sums, so they are valid
    though not tight).  ``zeros`` holds the simple-zero candidates found
    on [0, 2*pi).
    """

    cos_coeffs: tuple[float, ...]
    sin_coeffs: tuple[float, ...]
    lipschitz: float = field(init=False)
    sup_norm: float = field(init=False)
    is_even: bool = field(init=False)
    zeros: tuple[ForcingZero, ...] = field(init=False)

    def __post_init__(self):
        ncos = len(self.cos_coeffs)
        nsin = len(self.sin_coeffs)
        lip = 0.0
        sup = 0.0
        for n in range(max(ncos, nsin)):
            c = self.cos_coeffs[n] if n < ncos else 0.0
            s = self.sin_coeffs[n] if n < nsin else 0.0
            sup += abs(c) + abs(s)
            lip += (n + 1) * (abs(c) + abs(s))
        object.__setattr__(self, "lipschitz", lip)
        object.__setattr__(self, "sup_norm", sup)
        object.__setattr__(self, "is_even", all(s == 0.0 for s in self.sin_coeffs))
        object.__setattr__(self, "zeros", tuple(self._locate_zeros()))

    # -- construction ----------------------------------------------------

    @classmethod
    def from_fourier(cls, cos=(), sin=(), constant=0.0) -> "ForcingProfile":
        """Build a profile from Fourier data; any constant term is removed
        (the family requires zero-mean forcing)."""
        del constant  # mean removal: the constant term is simply dropped
        return cls(tuple(float(c) for c in cos), tuple(float(s) for s in sin))

    @classmethod
    def cosine(cls) -> "ForcingProfile":
        """The standard drive g(t) = cos t."""
        return cls((1.0,), ())

    # -- evaluation ------------------------------------------------------

    def __call__(self, t):
        """Evaluate g(t); accepts scalars or arrays."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n, c in enumerate(self.cos_coeffs, start=1):
            out = out + c * np.cos(n * t)
        for n, s in enumerate(self.sin_coeffs, start=1):
            out = out + s * np.sin(n * t)
        return out if out.ndim else float(out)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n, c in enumerate(self.cos_coeffs, start=1):
            out = out - c * n * np.sin(n * t)
        for n, s in enumerate(self.sin_coeffs, start=1):
            out = out + s * n * np.cos(n * t)
        return out if out.ndim else float(out)

    def antiderivative(self, t):
        """G(t) = int_0^t g, exact termwise; G(0) = G(2*pi) = 0."""
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        shift = 0.0
        for n, c in enumerate(self.cos_coeffs, start=1):
            out = out + c * np.sin(n * t) / n
        for n, s in enumerate(self.sin_coeffs, start=1):
            out = out - s * np.cos(n * t) / n
            shift += s / n
        out = out + shift
        return out if out.ndim else float(out)

    # -- metadata --------------------------------------------------------

    @property
    def cos_array(self) -> np.ndarray:
        return np.asarray(self.cos_coeffs, dtype=np.float64)

    @property
    def sin_array(self) -> np.ndarray:
        return np.asarray(self.sin_coeffs, dtype=np.float64)

    def _locate_zeros(self):
        """Sign-change bisection on a fine grid, polished by bisection.

        Tangential (non-simple) zeros produce no sign change and are
        caught separately in ``transversality_report`` via zeros of g'.
        """
        n_harm = max(len(self.cos_coeffs), len(self.sin_coeffs), 1)
        if self.sup_norm == 0.0:
            return []
        m = max(512, 128 * n_harm)
        ts = np.linspace(0.0, 2.0 * math.pi, m + 1)
        vals = self(ts)
        zeros = []
        for i in range(m):
            va, vb = vals[i], vals[i + 1]
            if va == 0.0:
                root = ts[i]
            elif va * vb < 0.0:
                root = self._bisect(ts[i], ts[i + 1], va)
            else:
                continue
            zeros.append(ForcingZero(t=float(root % (2.0 * math.pi)),
                                     slope=float(self.derivative(root))))
        # drop the duplicate at t = 2*pi if the last endpoint was a zero
        uniq = []
        for z in sorted(zeros, key=lambda z: z.t):
            if uniq and abs(z.t - uniq[-1].t) < 1e-9:
                continue
            uniq.append(z)
        return uniq

    def _bisect(self, lo, hi, flo):
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            fm = self(mid)
            if abs(fm) <= _ZERO_RESIDUAL or (hi - lo) < 1e-15:
                return mid
            if (flo < 0.0) == (fm < 0.0):
                lo, flo = mid, fm
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def transversality_report(self) -> TransversalityReport:
        """Locate all zeros of g, check they are simple, report slopes.

        Raises DegenerateForcing if g vanishes identically, if a located
        zero has |g'| <= SIMPLE_ZERO_SLOPE, or if g has a tangential zero
        (a zero of g' where g also vanishes).
        """
        if self.sup_norm == 0.0:
            raise DegenerateForcing("forcing is identically zero")
        for z in self.zeros:
            if abs(z.slope) <= SIMPLE_ZERO_SLOPE:
                raise DegenerateForcing(
                    f"zero at t={z.t:.12g} has slope {z.slope:.3e}")
        # tangential zeros: g touches zero without a sign change
        m = 4096
        ts = np.linspace(0.0, 2.0 * math.pi, m, endpoint=False)
        dv = self.derivative(ts)
        for i in range(m):
            j = (i + 1) % m
            if dv[i] == 0.0 or dv[i] * dv[j] < 0.0:
                lo, hi = ts[i], ts[i] + 2.0 * math.pi / m
                for _ in range(80):
                    mid = 0.5 * (lo + hi)
                    if (self.derivative(lo) < 0) == (self.derivative(mid) < 0):
                        lo = mid
                    else:
                        hi = mid
                tc = 0.5 * (lo + hi)
                if abs(self(tc)) <= _ZERO_RESIDUAL * 10 and not any(
                        abs((tc - z.t + math.pi) % (2 * math.pi) - math.pi) < 1e-6
                        for z in self.zeros):
                    raise DegenerateForcing(
                        f"tangential zero near t={tc:.12g}")
        return TransversalityReport(zeros=self.zeros,
                                    lipschitz=self.lipschitz,
                                    is_even=self.is_even)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"cos": list(self.cos_coeffs),
                           "sin": list(self.sin_coeffs)})

    @classmethod
    def from_json(cls, text: str) -> "ForcingProfile":
        doc = json.loads(text)
        return cls.from_fourier(doc.get("cos", ()), doc.get("sin", ()))
