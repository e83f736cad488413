"""Parameter-plane scans of the rotation number at fixed mu.

Cells are independent, so rows are dispatched to a thread pool (the
integrator kernels release the GIL); results land in a buffer indexed by
cell id, which makes the emitted order row-major and deterministic
regardless of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import JosephsonError
from .flow import DEFAULT_CONFIG, IntegratorConfig, Params
from .forcing import ForcingProfile
from .rotation import rotation_number


@dataclass(frozen=True)
class ScanGrid:
    """Rectangular (a, b) grid at fixed mu; k_range labels the tongues of
    interest for rendering."""

    a_min: float
    a_max: float
    a_steps: int
    b_min: float
    b_max: float
    b_steps: int
    mu: float
    k_range: tuple[int, int] = (-4, 4)

    def __post_init__(self):
        if self.a_steps < 2 or self.b_steps < 2:
            raise ValueError("grids need at least 2 steps per axis")
        if not (self.a_max > self.a_min and self.b_max > self.b_min):
            raise ValueError("degenerate grid ranges")
        if not self.mu > 0.0:
            raise ValueError("mu must be positive")

    @property
    def a_values(self) -> np.ndarray:
        return np.linspace(self.a_min, self.a_max, self.a_steps)

    @property
    def b_values(self) -> np.ndarray:
        return np.linspace(self.b_min, self.b_max, self.b_steps)


@dataclass(frozen=True)
class ScanCell:
    a: float
    b: float
    rho: float
    locked: bool
    k: Optional[int]


def _scan_row(b: float, a_values, mu: float, forcing: ForcingProfile,
              cfg: IntegratorConfig) -> list[ScanCell]:
    row = []
    for a in a_values:
        try:
            rn = rotation_number(Params(a=float(a), b=float(b), mu=mu),
                                 forcing, cfg)
            row.append(ScanCell(a=float(a), b=float(b), rho=rn.value,
                                locked=rn.locked, k=rn.k))
        except JosephsonError:
            # sentinel cell: the scan carries on
            row.append(ScanCell(a=float(a), b=float(b), rho=math.nan,
                                locked=False, k=None))
    return row


def scan_plane(grid: ScanGrid, cfg: IntegratorConfig = DEFAULT_CONFIG,
               workers: int = 1,
               forcing: Optional[ForcingProfile] = None) -> list[ScanCell]:
    """One rotation-number evaluation per cell, row-major in (b, a)."""
    forcing = forcing if forcing is not None else ForcingProfile.cosine()
    a_values = grid.a_values
    b_values = grid.b_values
    rows: list[Optional[list[ScanCell]]] = [None] * len(b_values)
    if workers <= 1:
        for i, b in enumerate(b_values):
            rows[i] = _scan_row(b, a_values, grid.mu, forcing, cfg)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(_scan_row, b, a_values, grid.mu, forcing, cfg): i
                for i, b in enumerate(b_values)}
            for fut, i in futures.items():
                rows[i] = fut.result()
    cells: list[ScanCell] = []
    for row in rows:
        cells.extend(row)
    return cells
