"""Planar primitives: distance, orientation, convex hull, onion peeling, perimeter.

Points are plain ``(x, y)`` pairs; anything indexable that way works, including
:class:`Point` and :class:`colored_tsp.instance_io.ColoredPoint`.
"""
from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple, Sequence

# Tolerance on cross products and on radius/perimeter comparisons.
EPS = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class Orientation(Enum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def distance(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def cross(o, a, b) -> float:
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(a, b, c, eps: float = EPS) -> Orientation:
    z = cross(a, b, c)
    if abs(z) <= eps:
        return Orientation.COLLINEAR
    return Orientation.COUNTERCLOCKWISE if z > 0 else Orientation.CLOCKWISE


def perimeter(tour: Sequence, closed: bool = True) -> float:
    """Sum of consecutive edge lengths, left to right.

    A closed two-point tour is the out-and-back segment, so its perimeter is
    twice the distance; a single point has perimeter 0.
    """
    if len(tour) == 0:
        raise ValueError("perimeter of an empty tour")
    total = 0.0
    for i in range(1, len(tour)):
        total += distance(tour[i - 1], tour[i])
    if closed and len(tour) > 1:
        total += distance(tour[-1], tour[0])
    return total


def convex_hull_boundary(points: Sequence, eps: float = EPS) -> list[int]:
    """Indices of every point on the convex hull boundary, collinear ones included.

    The result runs clockwise starting at the leftmost point (lowest y on ties).
    Points sharing exact coordinates are reported together, in index order.
    A fully collinear set comes back in order along the line, starting from
    its lexicographically smaller end.
    """
    if len(points) == 0:
        raise ValueError("empty point set")

    groups: dict[tuple[float, float], list[int]] = {}
    for i, p in enumerate(points):
        groups.setdefault((float(p[0]), float(p[1])), []).append(i)
    uniq = sorted(groups)

    if len(uniq) <= 2 or _all_collinear(uniq, eps):
        return [i for p in _along_line(uniq) for i in groups[p]]

    # Monotone chain; pop only on strict counterclockwise turns so that
    # collinear boundary points survive.
    upper: list[tuple[float, float]] = []
    for p in uniq:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) > eps:
            upper.pop()
        upper.append(p)
    lower: list[tuple[float, float]] = []
    for p in reversed(uniq):
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) > eps:
            lower.pop()
        lower.append(p)

    ring = upper + lower[1:-1]
    seen: set[tuple[float, float]] = set()
    out: list[int] = []
    for p in ring:
        if p not in seen:
            seen.add(p)
            out.extend(groups[p])
    return out


def _extremes(pts) -> tuple:
    """Two far-apart points; exact extremes when ``pts`` are collinear."""
    a = max(pts, key=lambda p: distance(pts[0], p))
    b = max(pts, key=lambda p: distance(a, p))
    return (a, b) if (a[0], a[1]) <= (b[0], b[1]) else (b, a)


def _all_collinear(pts, eps: float) -> bool:
    a, b = _extremes(pts)
    return all(abs(cross(a, b, p)) <= eps for p in pts)


def _along_line(pts):
    a, b = _extremes(pts)
    dx, dy = b[0] - a[0], b[1] - a[1]
    return sorted(pts, key=lambda p: ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy, p))


def onion_layers(points: Sequence, eps: float = EPS) -> list[list[int]]:
    """Peel convex layers until nothing is left; indices refer to ``points``."""
    remaining = list(range(len(points)))
    layers: list[list[int]] = []
    while remaining:
        hull = convex_hull_boundary([points[i] for i in remaining], eps)
        layer = [remaining[j] for j in hull]
        layers.append(layer)
        taken = set(layer)
        remaining = [i for i in remaining if i not in taken]
    return layers


def contains(hull: Sequence, p, eps: float = EPS) -> bool:
    """True if ``p`` is inside or on the clockwise polygon ``hull``.

    Degenerate hulls (one point, or all collinear) are treated as the segment
    between their extreme points.
    """
    if len(hull) < 3 or _all_collinear(hull, eps):
        a, b = _extremes(hull)
        if abs(cross(a, b, p)) > eps:
            return False
        return (min(a[0], b[0]) - eps <= p[0] <= max(a[0], b[0]) + eps
                and min(a[1], b[1]) - eps <= p[1] <= max(a[1], b[1]) + eps)
    n = len(hull)
    return all(cross(hull[i], hull[(i + 1) % n], p) <= eps for i in range(n))
