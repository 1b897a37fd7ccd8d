"""Planar L_p geometry: distances, axis frames, and distance profiles.

Everything downstream works in an "axis frame" where the feasible
center line is the interval [0, L] of the horizontal axis. This module
provides the norm and tolerance types, exact point-to-segment
distances, the frame transform, and the small set of scalar searches
(argmin along the axis, equal-distance point) the solvers build on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoCrossing, NonIsometricRotation

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class NormP:
    """An L_p norm exponent, 1 <= p < infinity."""

    p: float

    def __post_init__(self) -> None:
        p = self.p
        if not isinstance(p, (int, float)) or isinstance(p, bool) or not math.isfinite(p):
            raise ValueError("norm exponent must be a finite real")
        if p < 1.0:
            raise ValueError(f"norm exponent must satisfy p >= 1, got {p}")
        object.__setattr__(self, "p", float(p))


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))


@dataclass(frozen=True)
class Segment:
    """A closed segment between two points; a == b is allowed."""

    a: Point
    b: Point


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance and iteration cap shared by all searches."""

    eps: float = 1e-9
    max_iters: int = 200

    def __post_init__(self) -> None:
        if not (isinstance(self.eps, (int, float)) and self.eps > 0 and math.isfinite(self.eps)):
            raise ValueError("eps must be a positive finite real")
        if not (isinstance(self.max_iters, int) and self.max_iters >= 1):
            raise ValueError("max_iters must be a positive integer")
        object.__setattr__(self, "eps", float(self.eps))


def _lp_pair(dx: float, dy: float, p: float) -> float:
    """(|dx|^p + |dy|^p)^(1/p), scaled so large inputs do not overflow."""
    dx = abs(dx)
    dy = abs(dy)
    if p == 2.0:
        return math.hypot(dx, dy)
    if p == 1.0:
        return dx + dy
    m = dx if dx >= dy else dy
    if m == 0.0:
        return 0.0
    return m * ((dx / m) ** p + (dy / m) ** p) ** (1.0 / p)


def lp_distance(a: Point, b: Point, norm: NormP) -> float:
    """Distance between two points under the given norm."""
    return _lp_pair(a.x - b.x, a.y - b.y, norm.p)


def _stationary_params(A: float, B: float, ux: float, uy: float, p: float) -> list:
    """Interior zeros of d/dt of |A - t*ux|^p + |B - t*uy|^p, p > 1.

    For a fixed sign pattern of the two absolute values the optimality
    condition becomes linear in t, so at most four candidates exist.
    Patterns whose scale factor overflows correspond to optima pinned
    at a kink, which the caller already evaluates.
    """
    out = []
    e = 1.0 / (p - 1.0)
    for sa in (-1.0, 1.0):
        for sb in (-1.0, 1.0):
            k = -(uy * sb) / (ux * sa)
            if not (k > 0.0) or math.isinf(k):
                continue
            try:
                c = k ** e
            except OverflowError:
                continue
            if not math.isfinite(c) or c == 0.0:
                continue
            m = sa * sb * c
            den = ux - m * uy
            if den == 0.0:
                continue
            t = (A - m * B) / den
            if 0.0 < t < 1.0 and sa * (A - t * ux) >= 0.0 and sb * (B - t * uy) >= 0.0:
                out.append(t)
    return out


def point_segment_distance(q: Point, s: Segment, norm: NormP, tol: Tolerance) -> float:
    """Minimum distance from q to any point of s under the norm.

    p = 2 uses the clamped perpendicular projection. Other exponents
    enumerate the finitely many optimality candidates of the convex
    one-dimensional problem (segment ends, the two coordinate kinks,
    and the sign-pattern stationary points), which is exact. The
    iterative search in _min_distance_search is kept as an
    independently implemented cross-check.
    """
    p = norm.p
    ax, ay = s.a.x, s.a.y
    ux, uy = s.b.x - ax, s.b.y - ay
    A, B = q.x - ax, q.y - ay
    if ux == 0.0 and uy == 0.0:
        return _lp_pair(A, B, p)
    if p == 2.0:
        t = (A * ux + B * uy) / (ux * ux + uy * uy)
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        return math.hypot(A - t * ux, B - t * uy)
    cands = [0.0, 1.0]
    if ux != 0.0:
        t = A / ux
        if 0.0 < t < 1.0:
            cands.append(t)
    if uy != 0.0:
        t = B / uy
        if 0.0 < t < 1.0:
            cands.append(t)
    if p > 1.0 and ux != 0.0 and uy != 0.0:
        cands.extend(_stationary_params(A, B, ux, uy, p))
    return min(_lp_pair(A - t * ux, B - t * uy, p) for t in cands)


def _min_distance_search(q: Point, s: Segment, norm: NormP, tol: Tolerance) -> float:
    """Golden-section minimisation over the segment parameter.

    Distance to a convex set is convex, hence unimodal in t. Used only
    as a second route in tests; the width target is scaled by the
    segment extent so the value error stays below tol.eps.
    """
    p = norm.p
    ax, ay = s.a.x, s.a.y
    ux, uy = s.b.x - ax, s.b.y - ay
    A, B = q.x - ax, q.y - ay
    if ux == 0.0 and uy == 0.0:
        return _lp_pair(A, B, p)

    def f(t: float) -> float:
        return _lp_pair(A - t * ux, B - t * uy, p)

    lo, hi = 0.0, 1.0
    target = tol.eps / max(1.0, _lp_pair(ux, uy, p))
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    it = 0
    while hi - lo > target and it < tol.max_iters:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
        it += 1
    return min(f(lo), fc, fd, f(hi))


@dataclass(frozen=True)
class AxisFrame:
    """Rigid map sending the constraint segment onto (0,0)-(L,0).

    rows holds the 2x2 matrix applied to offsets from origin; its
    transpose inverts it (the matrix is orthonormal).
    """

    origin: Point
    rows: tuple
    L: float

    def forward_point(self, q: Point) -> Point:
        dx, dy = q.x - self.origin.x, q.y - self.origin.y
        (m00, m01), (m10, m11) = self.rows
        return Point(m00 * dx + m01 * dy, m10 * dx + m11 * dy)

    def inverse_point(self, q: Point) -> Point:
        (m00, m01), (m10, m11) = self.rows
        return Point(self.origin.x + m00 * q.x + m10 * q.y,
                     self.origin.y + m01 * q.x + m11 * q.y)

    def forward_segment(self, s: Segment) -> Segment:
        return Segment(self.forward_point(s.a), self.forward_point(s.b))

    def inverse_segment(self, s: Segment) -> Segment:
        return Segment(self.inverse_point(s.a), self.inverse_point(s.b))


def transform_to_axis(constraint: Segment, norm: NormP) -> AxisFrame:
    """Frame in which the constraint segment becomes [0, L] on the axis.

    L is the Euclidean length. For p != 2 the constraint must be
    parallel to a coordinate axis; the returned matrix is then a signed
    permutation, which preserves every L_p distance.
    """
    dx = constraint.b.x - constraint.a.x
    dy = constraint.b.y - constraint.a.y
    L = math.hypot(dx, dy)
    if L == 0.0:
        raise ValueError("constraint segment must have positive length")
    if norm.p == 2.0:
        c, s = dx / L, dy / L
        rows = ((c, s), (-s, c))
    elif dy == 0.0:
        rows = ((1.0, 0.0), (0.0, 1.0)) if dx > 0 else ((-1.0, 0.0), (0.0, -1.0))
    elif dx == 0.0:
        # quarter turns: (x,y) -> (y,-x) for upward, (x,y) -> (-y,x) for downward
        rows = ((0.0, 1.0), (-1.0, 0.0)) if dy > 0 else ((0.0, -1.0), (1.0, 0.0))
    else:
        raise NonIsometricRotation(
            f"constraint is not axis-parallel and p={norm.p} is not rotation-invariant")
    return AxisFrame(origin=constraint.a, rows=rows, L=L)


def segment_ox_intersection(s: Segment):
    """Where s meets the horizontal axis.

    Returns (x, collinear) or None. A segment lying on the axis reports
    its leftmost x with collinear=True; touching an endpoint counts.
    """
    ya, yb = s.a.y, s.b.y
    if ya == 0.0 and yb == 0.0:
        return min(s.a.x, s.b.x), True
    if ya == 0.0:
        return s.a.x, False
    if yb == 0.0:
        return s.b.x, False
    if (ya > 0.0) == (yb > 0.0):
        return None
    t = ya / (ya - yb)
    return s.a.x + t * (s.b.x - s.a.x), False


def _profile_min_unclamped(s: Segment):
    """Exact minimiser of x -> distance((x,0), s) over the whole axis.

    The minimum value equals min_t |qy(t)| for every norm, attained
    below the segment point of smallest |y|. Plateaus (horizontal or
    on-axis segments) resolve to the smallest x. Returns (xmin, dmin).
    """
    ya, yb = s.a.y, s.b.y
    hit = segment_ox_intersection(s)
    if hit is not None:
        return hit[0], 0.0
    if abs(ya) < abs(yb):
        return s.a.x, abs(ya)
    if abs(yb) < abs(ya):
        return s.b.x, abs(yb)
    return min(s.a.x, s.b.x), abs(ya)


def _plateau(s: Segment):
    """The closed x-range of unconstrained minimisers of the profile."""
    ya, yb = s.a.y, s.b.y
    if ya == yb:
        return min(s.a.x, s.b.x), max(s.a.x, s.b.x)
    xm, _ = _profile_min_unclamped(s)
    return xm, xm


def distance_argmin_on_axis(s: Segment, L: float, norm: NormP, tol: Tolerance,
                            strategy: str = "candidates"):
    """Minimise x -> distance((x,0), s) over [0, L].

    Returns (xmin, dmin). The profile is convex, so the minimiser is
    the clamp of the unconstrained plateau; ties resolve to the
    smallest x. Two strategies are provided and must agree on the
    minimum value: direct evaluation of the geometric candidates
    {0, L, endpoint abscissas, axis crossing}, and a binary search on
    an approximate derivative sign.
    """
    if L < 0.0:
        raise ValueError("L must be nonnegative")
    if strategy == "candidates":
        xs = {0.0, L}
        for x in (s.a.x, s.b.x):
            if 0.0 <= x <= L:
                xs.add(x)
        hit = segment_ox_intersection(s)
        if hit is not None and 0.0 <= hit[0] <= L:
            xs.add(hit[0])
        best_x, best = 0.0, math.inf
        for x in sorted(xs):
            d = point_segment_distance(Point(x, 0.0), s, norm, tol)
            if d < best:
                best_x, best = x, d
        return best_x, best
    if strategy == "derivative":
        def d(x: float) -> float:
            return point_segment_distance(Point(x, 0.0), s, norm, tol)

        lo, hi = 0.0, L
        it = 0
        while hi - lo > tol.eps and it < tol.max_iters:
            m = 0.5 * (lo + hi)
            probe = min(L, m + tol.eps)
            # strictly decreasing at m means the minimiser lies right of m
            if d(probe) < d(m):
                lo = m
            else:
                hi = m
            it += 1
        x = 0.5 * (lo + hi)
        return x, d(x)
    raise ValueError(f"unknown strategy {strategy!r}")


def axis_argmin_exact(s: Segment, L: float, norm: NormP, tol: Tolerance):
    """Closed-form constrained argmin used internally by the solvers.

    Same contract as distance_argmin_on_axis but derived from the
    plateau geometry instead of candidate evaluation, and exact.
    """
    plo, phi = _plateau(s)
    if phi < 0.0:
        x = 0.0
    elif plo > L:
        x = L
    else:
        x = max(0.0, plo)
    return x, point_segment_distance(Point(x, 0.0), s, norm, tol)


def equal_distance_point(s1: Segment, s2: Segment, u: float, v: float,
                         norm: NormP, tol: Tolerance) -> float:
    """Binary search the x in [u, v] equidistant from s1 and s2.

    Requires the signed difference of the two distances to change sign
    across the bracket (an exact zero at an endpoint short-circuits).
    Profiles are 1-Lipschitz in x, so bisecting to eps/4 leaves the
    distance mismatch at the returned point below tol.eps.
    """
    def g(x: float) -> float:
        q = Point(x, 0.0)
        return (point_segment_distance(q, s1, norm, tol)
                - point_segment_distance(q, s2, norm, tol))

    gu, gv = g(u), g(v)
    if gu == 0.0:
        return u
    if gv == 0.0:
        return v
    if (gu > 0.0) == (gv > 0.0):
        raise NoCrossing(f"no sign change on [{u}, {v}]")
    pos_u = gu > 0.0
    it = 0
    while v - u > tol.eps / 4.0 and it < tol.max_iters:
        m = 0.5 * (u + v)
        gm = g(m)
        if gm == 0.0:
            return m
        if (gm > 0.0) == pos_u:
            u = m
        else:
            v = m
        it += 1
    return 0.5 * (u + v)
