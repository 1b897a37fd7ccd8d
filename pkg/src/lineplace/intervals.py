"""Axis intervals and the covering interval of a segment.

The covering interval of a segment s at radius R is the set of axis
abscissas x whose L_p ball of radius R centered at (x, 0) touches s.
Distance to a segment is convex in x, so this set is a closed interval
(possibly empty). Solvers combine these intervals by intersection
(enclosing problems) or union (empty-ball problems).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import NormP, Point, Segment, Tolerance, _profile_min_unclamped, \
    point_segment_distance


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; the empty interval is (+inf, -inf)."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval bounds must not be NaN")
        if lo > hi and not (lo == math.inf and hi == -math.inf):
            raise ValueError(f"interval bounds out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def empty(cls) -> "Interval":
        return cls(math.inf, -math.inf)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def width(self) -> float:
        return 0.0 if self.is_empty else self.hi - self.lo

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return (not self.is_empty) and self.lo - slack <= x <= self.hi + slack


def _halfwidth(R: float, y: float, p: float):
    """Half-extent in x of the radius-R ball test against height y.

    Returns the largest h with lp(h, y) <= R, or None when |y| > R.
    A slightly negative base only arises from rounding at |y| = R and
    is clamped to the boundary.
    """
    y = abs(y)
    if R == 0.0:
        return 0.0 if y == 0.0 else None
    base = 1.0 - (y / R) ** p
    if base < 0.0:
        if base < -1e-9:
            return None
        base = 0.0
    return R * base ** (1.0 / p)


def _covering_analytic(s: Segment, R: float, norm: NormP) -> Interval:
    p = norm.p
    ax, ay = s.a.x, s.a.y
    ux, uy = s.b.x - ax, s.b.y - ay
    # segment parameters t whose point can be reached at all: |qy(t)| <= R
    if uy == 0.0:
        if abs(ay) > R:
            return Interval.empty()
        tA, tB = 0.0, 1.0
    else:
        t1 = (-R - ay) / uy
        t2 = (R - ay) / uy
        tA = max(min(t1, t2), 0.0)
        tB = min(max(t1, t2), 1.0)
        if tA > tB:
            return Interval.empty()
    cands = [tA, tB]
    if uy != 0.0:
        t0 = -ay / uy
        if tA < t0 < tB:
            cands.append(t0)
    # interior extrema of qx(t) -+ halfwidth(qy(t)) exist only for p > 1
    # and occur where |qy| equals ystar below (balance of slopes)
    if p > 1.0 and ux != 0.0 and uy != 0.0 and R > 0.0:
        try:
            mu = (abs(ux) / abs(uy)) ** (p / (p - 1.0))
        except OverflowError:
            mu = math.inf
        ratio = 1.0 if math.isinf(mu) else mu / (1.0 + mu)
        ystar = R * ratio ** (1.0 / p)
        for ys in (ystar, -ystar):
            t = (ys - ay) / uy
            if tA < t < tB:
                cands.append(t)
    lo, hi = math.inf, -math.inf
    for t in cands:
        h = _halfwidth(R, ay + t * uy, p)
        if h is None:
            continue
        x = ax + t * ux
        if x - h < lo:
            lo = x - h
        if x + h > hi:
            hi = x + h
    if lo > hi:
        return Interval.empty()
    return Interval(lo, hi)


def _covering_bisect(s: Segment, R: float, norm: NormP, tol: Tolerance) -> Interval:
    def d(x: float) -> float:
        return point_segment_distance(Point(x, 0.0), s, norm, tol)

    xm, dm = _profile_min_unclamped(s)
    if dm > R:
        return Interval.empty()
    # outside [min_x - R, max_x + R] the x-offset alone already exceeds R
    lo0 = min(s.a.x, s.b.x) - R
    hi0 = max(s.a.x, s.b.x) + R

    def boundary(a: float, b: float, increasing: bool) -> float:
        # invariant: d(a) and d(b) straddle R with the covered side at b
        it = 0
        while b - a > tol.eps / 2.0 and it < tol.max_iters:
            m = 0.5 * (a + b)
            inside = d(m) <= R
            if inside == increasing:
                b = m
            else:
                a = m
            it += 1
        return 0.5 * (a + b)

    u = lo0 if d(lo0) <= R else boundary(lo0, xm, True)
    v = hi0 if d(hi0) <= R else boundary(xm, hi0, False)
    return Interval(u, v)


def covering_interval(s: Segment, R: float, L: float, norm: NormP, tol: Tolerance,
                      method: str = "analytic") -> Interval:
    """All x on the axis with distance((x,0), s) <= R.

    The result is not clipped to [0, L]; callers intersect with the
    feasible range themselves. Two routes are provided: a closed-form
    candidate evaluation (default) and a convexity-based boundary
    bisection, kept as an independent cross-check.
    """
    if R < 0.0 or not math.isfinite(R):
        raise ValueError("radius must be finite and nonnegative")
    if method == "analytic":
        return _covering_analytic(s, R, norm)
    if method == "bisect":
        return _covering_bisect(s, R, norm, tol)
    raise ValueError(f"unknown method {method!r}")


def intersect_all(intervals) -> Interval:
    """Intersection of one or more intervals."""
    items = list(intervals)
    if not items:
        raise ValueError("need at least one interval")
    lo = max(iv.lo for iv in items)
    hi = min(iv.hi for iv in items)
    if lo > hi:
        return Interval.empty()
    return Interval(lo, hi)


def union_covers(intervals, domain: Interval):
    """Whether the union of intervals covers domain; else a witness.

    Returns (True, None) or (False, x) with x a point of domain no
    interval contains. A gap at the start reports domain.lo itself,
    interior and trailing gaps report the gap midpoint.
    """
    if domain.is_empty:
        return True, None
    items = sorted((iv for iv in intervals if not iv.is_empty),
                   key=lambda iv: (iv.lo, iv.hi))
    reach = domain.lo
    touched = False
    for iv in items:
        if iv.hi < domain.lo:
            continue
        if iv.lo > reach:
            if not touched:
                return False, domain.lo
            gap_end = iv.lo if iv.lo < domain.hi else domain.hi
            return False, 0.5 * (reach + gap_end)
        touched = True
        if iv.hi > reach:
            reach = iv.hi
        if reach >= domain.hi:
            return True, None
    if not touched:
        return False, domain.lo
    return False, 0.5 * (reach + domain.hi)
