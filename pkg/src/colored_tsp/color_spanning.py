"""Minimum color-spanning circle (MCSC) and the in-circle point set MSP.

The MCSC is found exactly by enumerating candidate circles: every point
(radius 0), every diametral circle of a point pair, and every circumcircle of
a non-collinear triple. The optimum is always one of these because it is the
smallest enclosing circle of some transversal, so only circles whose defining
points have pairwise distinct colors are built. Among spanning candidates the
smallest ``(radius, center_x, center_y)`` wins.

Small instances enumerate all O(n^3) candidates at once. Larger ones only
build candidates whose radius stays below a threshold ``t``, which grows
geometrically from a lower bound to a known spanning radius. Either way, every
candidate that could be optimal gets checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.spatial import cKDTree

from .geometry import EPS, distance
from .instance_io import Instance

# Use the all-candidates path while C(n, 3) stays below this.
DENSE_TRIPLE_LIMIT = 60_000
_CHUNK = 16_384
_GROWTH = 1.25


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def contains(self, p, eps: float = EPS) -> bool:
        return distance(self.center, p) <= self.radius + eps


def spans(instance: Instance, circle: Circle, eps: float = EPS) -> bool:
    """True if the closed disk holds at least one point of every color."""
    found = {p.color for p in instance.points if circle.contains(p, eps)}
    return len(found) == instance.k


def min_color_spanning_circle(instance: Instance, dense: bool | None = None) -> Circle:
    """Smallest circle containing at least one point of each color.

    ``dense`` forces one enumeration path (``True``: all candidates at once,
    ``False``: radius-thresholded); by default it is chosen from ``n``.
    """
    buckets = instance.buckets()
    for c, b in enumerate(buckets, start=1):
        if not b:
            raise ValueError(f"color class empty: {c}")
    if instance.k == 1:
        p = instance.points[buckets[0][0]]
        return Circle((p.x, p.y), 0.0)

    pts = np.array([(p.x, p.y) for p in instance.points], dtype=float)
    colors = np.array([p.color - 1 for p in instance.points])
    n = len(pts)
    if dense is None:
        dense = math.comb(n, 3) <= DENSE_TRIPLE_LIMIT
    best = _dense_search(pts, colors) if dense else _thresholded_search(pts, colors, instance.k)
    return Circle((float(best[1]), float(best[2])), float(best[0]))


# --- candidate construction -----------------------------------------------

def _circumcircles(ax, ay, bx, by, qx, qy):
    """Vectorised circumcircles of triangles (a, b, q), computed relative to a.

    Near-collinear triples (|cross| <= EPS) get an infinite radius.
    """
    bx, by = bx - ax, by - ay
    qx, qy = qx - ax, qy - ay
    z = bx * qy - by * qx
    flat = np.abs(z) <= EPS
    d = 2.0 * np.where(flat, 1.0, z)
    b2 = bx * bx + by * by
    q2 = qx * qx + qy * qy
    ux = (qy * b2 - by * q2) / d
    uy = (bx * q2 - qx * b2) / d
    r = np.sqrt(ux * ux + uy * uy)
    r[flat] = np.inf
    return ax + ux, ay + uy, r


def _diametral(ax, ay, bx, by):
    return (ax + bx) / 2.0, (ay + by) / 2.0, np.hypot(ax - bx, ay - by) / 2.0


@lru_cache(maxsize=32)
def _index_tables(n: int):
    """Pair and triple index arrays for n points, plus flat pair offsets."""
    pi, pj = np.triu_indices(n, 1)
    tri = np.fromiter(combinations(range(n), 3), dtype=np.dtype((np.intp, 3)),
                      count=math.comb(n, 3)).reshape(-1, 3)
    ti, tj, tl = (np.ascontiguousarray(tri[:, c]) for c in range(3))
    tables = (pi, pj, ti, tj, tl, ti * n + tj, ti * n + tl, tj * n + tl)
    for arr in tables:
        arr.setflags(write=False)
    return tables


def _radius_window(far: np.ndarray, gap: float) -> tuple[float, float]:
    """Bounds on the optimal radius r*.

    ``far[i]`` is the radius needed, centered at point i, to reach every
    color, so r* <= min(far). Every point of the optimal transversal reaches
    all colors within 2 r*, so r* >= min(far) / 2. ``gap`` is the largest
    closest-pair distance between two color classes; the optimal disk holds
    one point of each, so r* >= gap / 2 as well.
    """
    upper = float(far.min())
    return max(upper, gap) / 2.0 - EPS, upper * (1 + 1e-9) + EPS


def _first_spanning(cx, cy, r, check):
    """Smallest (r, cx, cy) candidate for which ``check`` holds, or None.

    Candidates are tested in ascending order in growing chunks, so only those
    up to the optimum (plus one chunk) pay for the spanning test.
    """
    order = np.lexsort((cy, cx, r))
    cx, cy, r = cx[order], cy[order], r[order]
    start, size = 0, 32
    while start < len(r):
        sl = slice(start, start + size)
        hit = np.flatnonzero(check(cx[sl], cy[sl], r[sl]))
        if hit.size:
            j = start + hit[0]
            return (r[j], cx[j], cy[j])
        start += size
        size = min(size * 4, _CHUNK)
    return None


# --- all-candidates path --------------------------------------------------

def _dense_search(pts, colors):
    # Candidates are built over original indices (i < j < l, anchored at i)
    # so their floating-point values match the thresholded path exactly.
    n = len(pts)
    x = np.ascontiguousarray(pts[:, 0])
    y = np.ascontiguousarray(pts[:, 1])
    perm = np.argsort(colors, kind="stable")
    sorted_colors = colors[perm]
    starts = np.flatnonzero(np.concatenate(([True], sorted_colors[1:] != sorted_colors[:-1])))
    px, py = x[perm], y[perm]

    dist = np.hypot(x[:, None] - x, y[:, None] - y)
    by_color = np.minimum.reduceat(dist[:, perm], starts, axis=1)
    far = by_color.max(axis=1)
    gap = np.minimum.reduceat(by_color[perm], starts, axis=0).max()
    lo, hi = _radius_window(far, float(gap))

    pi, pj, ti, tj, tl, f_ij, f_il, f_jl = _index_tables(n)
    cxs, cys, rs = [], [], []
    if lo <= 0.0:
        cxs.append(x), cys.append(y), rs.append(np.zeros(n))
    r2 = dist[pi, pj] / 2.0
    sel = np.flatnonzero((r2 >= lo) & (r2 <= hi) & (colors[pi] != colors[pj]))
    i, j = pi[sel], pj[sel]
    cx, cy, r = _diametral(x[i], y[i], x[j], y[j])
    cxs.append(cx), cys.append(cy), rs.append(r)
    if len(ti):
        # a circle of radius <= hi has no chord longer than 2 hi
        near = ((dist <= 2.0 * hi + 1e-7) & (colors[:, None] != colors)).ravel()
        sel = np.flatnonzero(near[f_ij] & near[f_il] & near[f_jl])
        i, j, m = ti[sel], tj[sel], tl[sel]
        cx, cy, r = _circumcircles(x[i], y[i], x[j], y[j], x[m], y[m])
        sel = (r >= lo) & (r <= hi)
        cxs.append(cx[sel]), cys.append(cy[sel]), rs.append(r[sel])

    def check(cx, cy, r):
        dx = cx[:, None] - px
        dy = cy[:, None] - py
        reach = r + EPS
        inside = dx * dx + dy * dy <= (reach * reach)[:, None]
        return np.logical_or.reduceat(inside, starts, axis=1).all(axis=1)

    best = _first_spanning(np.concatenate(cxs), np.concatenate(cys), np.concatenate(rs), check)
    if best is None:  # pragma: no cover - the window always holds the optimum
        raise RuntimeError("no spanning candidate found")
    return best


# --- radius-thresholded path ----------------------------------------------

def _spanning_mask(trees, cx, cy, r):
    centers = np.column_stack([cx, cy])
    ok = np.ones(len(r), dtype=bool)
    bound = float(r.max()) + 2 * EPS if len(r) else 0.0
    for tree in trees:
        live = np.flatnonzero(ok)
        if live.size == 0:
            break
        d, _ = tree.query(centers[live], k=1, distance_upper_bound=bound)
        ok[live] = d <= r[live] + EPS
    return ok


def _thresholded_search(pts, colors, k):
    trees = [cKDTree(pts[colors == c]) for c in range(k)]
    far = np.zeros(len(pts))
    gap = 0.0
    for tree in trees:
        d, _ = tree.query(pts, k=1)
        far = np.maximum(far, d)
        for c in range(k):
            gap = max(gap, float(d[colors == c].min()))
    lo, hi = _radius_window(far, gap)
    everything = cKDTree(pts)

    def check(cx, cy, r):
        return _spanning_mask(trees, cx, cy, r)

    # Grow the radius cap t; once any candidate <= t spans, the best of those
    # is the optimum because every candidate <= t was generated.
    t = max(lo, 0.0)
    while True:
        t = min(max(t * _GROWTH, EPS), hi)
        cx, cy, r = _candidates_below(pts, colors, everything, lo, t)
        best = _first_spanning(cx, cy, r, check)
        if best is not None:
            return best
        if t >= hi:  # pragma: no cover - the window always holds the optimum
            raise RuntimeError("no spanning candidate found")


def _candidates_below(pts, colors, tree, lo, t):
    """All candidate circles with lo <= radius <= t."""
    n = len(pts)
    x = np.ascontiguousarray(pts[:, 0])
    y = np.ascontiguousarray(pts[:, 1])
    cxs, cys, rs = [], [], []
    if lo <= 0.0:
        cxs.append(x), cys.append(y), rs.append(np.zeros(n))
    pairs = tree.query_pairs(2.0 * t + 1e-7, output_type="ndarray")
    if len(pairs):
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        pairs = pairs[colors[pairs[:, 0]] != colors[pairs[:, 1]]]
        a, b = pairs[:, 0], pairs[:, 1]
        cx, cy, r = _diametral(x[a], y[a], x[b], y[b])
        sel = (r >= lo) & (r <= t)
        cxs.append(cx[sel]), cys.append(cy[sel]), rs.append(r[sel])

        # triples (i < j < l) with j and l both near the anchor i
        bounds = np.searchsorted(pairs[:, 0], np.arange(n + 1))
        for i in range(n):
            nb = pairs[bounds[i]:bounds[i + 1], 1]
            m = len(nb)
            if m < 2:
                continue
            a_idx, b_idx = np.triu_indices(m, 1)
            j, l = nb[a_idx], nb[b_idx]
            keep = colors[j] != colors[l]
            j, l = j[keep], l[keep]
            cx, cy, r = _circumcircles(x[i], y[i], x[j], y[j], x[l], y[l])
            sel = (r >= lo) & (r <= t)
            if sel.any():
                cxs.append(cx[sel]), cys.append(cy[sel]), rs.append(r[sel])
    if not rs:
        empty = np.zeros(0)
        return empty, empty, empty
    return np.concatenate(cxs), np.concatenate(cys), np.concatenate(rs)


# --- MSP ------------------------------------------------------------------

def build_msp(instance: Instance, circle: Circle, eps: float = EPS) -> list[int]:
    """One point per color from inside ``circle``.

    For each color the point nearest the center is kept, lowest index on ties.
    The result is ordered by color.
    """
    chosen: dict[int, tuple[float, int]] = {}
    cx, cy = circle.center
    reach = circle.radius + eps
    for i, p in enumerate(instance.points):
        d = math.hypot(p.x - cx, p.y - cy)
        if d > reach:
            continue
        cur = chosen.get(p.color)
        if cur is None or (d, i) < cur:
            chosen[p.color] = (d, i)
    if len(chosen) != instance.k:
        missing = sorted(set(range(1, instance.k + 1)) - set(chosen))
        raise ValueError(f"circle does not span colors {missing}")
    return [chosen[c][1] for c in sorted(chosen)]
