"""Brute-force grid oracles, independent of the solver geometry.

Distances are evaluated with vectorised numpy code that shares
nothing with the exact routines: the Euclidean case uses the closed
form projection and every other norm runs a golden-section search
over the segment parameter, per abscissa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput
from .geometry import NormP, Segment
from .intervals import Interval
from .one_center import PlacedCircle

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_CHUNK = 4096


@dataclass(frozen=True)
class GridSpec:
    """Evaluation abscissas: domain.lo, steps of `step`, then domain.hi."""

    step: float
    domain: Interval

    def __post_init__(self) -> None:
        if not (isinstance(self.step, (int, float)) and math.isfinite(self.step)
                and self.step > 0.0):
            raise ValueError("step must be a finite positive real")
        if self.domain.is_empty:
            raise ValueError("domain must be nonempty")
        object.__setattr__(self, "step", float(self.step))

    def abscissas(self) -> np.ndarray:
        lo, hi = self.domain.lo, self.domain.hi
        n = int(math.floor((hi - lo) / self.step + 1e-9)) + 1
        xs = lo + self.step * np.arange(n, dtype=float)
        if xs[-1] > hi:
            xs = xs[xs <= hi]
        if len(xs) == 0 or xs[-1] < hi:
            xs = np.append(xs, hi)
        return xs


def _np_lp(dx: np.ndarray, dy: np.ndarray, p: float) -> np.ndarray:
    dx = np.abs(dx)
    dy = np.abs(dy)
    if p == 1.0:
        return dx + dy
    if p == 2.0:
        return np.hypot(dx, dy)
    m = np.maximum(dx, dy)
    md = np.where(m > 0.0, m, 1.0)
    s = (dx / md) ** p + (dy / md) ** p
    return m * s ** (1.0 / p)


def segment_distances(xs: np.ndarray, seg: Segment, norm: NormP) -> np.ndarray:
    """Distance from (x, 0) to the segment for every x in xs."""
    xs = np.asarray(xs, dtype=float)
    p = norm.p
    ax, ay = seg.a.x, seg.a.y
    bx, by = seg.b.x, seg.b.y
    ux, uy = bx - ax, by - ay
    if ux == 0.0 and uy == 0.0:
        return _np_lp(xs - ax, np.full_like(xs, ay), p)
    if p == 2.0:
        t = ((xs - ax) * ux + (0.0 - ay) * uy) / (ux * ux + uy * uy)
        t = np.clip(t, 0.0, 1.0)
        return np.hypot(xs - (ax + t * ux), ay + t * uy)

    def f(t: np.ndarray) -> np.ndarray:
        return _np_lp(xs - (ax + t * ux), ay + t * uy, p)

    lo = np.zeros_like(xs)
    hi = np.ones_like(xs)
    for _ in range(80):
        c = hi - _GOLDEN * (hi - lo)
        d = lo + _GOLDEN * (hi - lo)
        sel = f(c) <= f(d)
        hi = np.where(sel, d, hi)
        lo = np.where(sel, lo, c)
    mid = 0.5 * (lo + hi)
    return np.minimum(np.minimum(f(lo), f(hi)), f(mid))


def _scan(segments, grid: GridSpec, norm: NormP, maximize: bool):
    if not segments:
        raise EmptyInput("need at least one segment")
    xs = grid.abscissas()
    inner = np.minimum if maximize else np.maximum
    pick = np.argmax if maximize else np.argmin
    best_x = None
    best_val = None
    for start in range(0, len(xs), _CHUNK):
        chunk = xs[start:start + _CHUNK]
        vals = None
        for seg in segments:
            d = segment_distances(chunk, seg, norm)
            vals = d if vals is None else inner(vals, d)
        i = int(pick(vals))
        v = float(vals[i])
        # strict improvement keeps the smallest abscissa on ties
        if best_val is None or (v > best_val if maximize else v < best_val):
            best_val = v
            best_x = float(chunk[i])
    return best_x, best_val


def grid_one_center(segments, grid: GridSpec, norm: NormP) -> PlacedCircle:
    """Grid minimiser of the farthest-segment distance."""
    x, val = _scan(segments, grid, norm, maximize=False)
    return PlacedCircle(x, val)


def grid_obnoxious_center(segments, grid: GridSpec, norm: NormP) -> PlacedCircle:
    """Grid maximiser of the nearest-segment distance."""
    x, val = _scan(segments, grid, norm, maximize=True)
    return PlacedCircle(x, val)
