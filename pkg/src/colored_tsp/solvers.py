"""Tour construction for the colored points TSP.

Four solvers share one report type:

* :func:`exact_fixed_order` enumerates every transversal (one point per color)
  but always visits colors in the order 1, 2, ..., k. It only optimises the
  point choice, so for k >= 4 it can miss the true optimum. The enumeration is
  exhaustive; there is no early exit on a non-improving candidate, because the
  perimeter is not monotone along the loop and such pruning drops optima.
* :func:`exact_bf_permutations` also enumerates cyclic color orders and is the
  reference optimum for small instances.
* :func:`exact_dp` is a dynamic program over (visited colors, last point).
* :func:`approx_onion` keeps one point per color inside the minimum
  color-spanning circle and visits its convex layers outermost first.

Tours are stored as point indices without repeating the first one; the
perimeter always includes the closing edge.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Optional

import numpy as np

from .color_spanning import Circle, build_msp, min_color_spanning_circle
from .geometry import onion_layers, perimeter
from .instance_io import Instance

DEFAULT_CAP = 10**8
MAX_BF_K = 10
MAX_DP_K = 20
CAP_ENV = "COLORED_TSP_CAP"


class CapExceeded(ValueError):
    """The instance is too large for the requested solver."""


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_CAP
    return int(float(raw))


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    perimeter: float


@dataclass
class SolveReport:
    algorithm: str
    tour: Tour
    elapsed: float
    mcsc: Optional[Circle] = None
    node_count: Optional[int] = None
    # approx only: onion layers of the MSP, as instance point indices
    layers: Optional[list[list[int]]] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def perimeter(self) -> float:
        return self.tour.perimeter


def _coords(instance: Instance) -> list[tuple[float, float]]:
    return [(p.x, p.y) for p in instance.points]


def _tour(coords, order) -> Tour:
    order = tuple(int(i) for i in order)
    return Tour(order, perimeter([coords[i] for i in order], closed=True))


def _check_buckets(instance: Instance) -> list[list[int]]:
    buckets = instance.buckets()
    for c, b in enumerate(buckets, start=1):
        if not b:
            raise ValueError(f"color class empty: {c}")
    return buckets


def exact_fixed_order(instance: Instance, cap: Optional[int] = None) -> SolveReport:
    """Best transversal with colors visited in the fixed order 1..k.

    Ties go to the lexicographically smallest index sequence, which is the
    first one met because buckets are enumerated in index order.
    """
    cap = enumeration_cap() if cap is None else cap
    buckets = _check_buckets(instance)
    size = math.prod(len(b) for b in buckets)
    if size > cap:
        raise CapExceeded(
            f"instance too large for enumeration: {size} transversals > cap {cap}"
        )
    t0 = time.perf_counter()
    coords = _coords(instance)
    best = math.inf
    best_order: tuple[int, ...] = ()
    for combo in product(*buckets):
        q = [coords[i] for i in combo]
        per = perimeter(q, closed=True)
        if per < best:
            best = per
            best_order = combo
    elapsed = time.perf_counter() - t0
    return SolveReport("exact-fixed", Tour(best_order, best), elapsed, node_count=size)


def cyclic_orders(k: int) -> list[tuple[int, ...]]:
    """Color orders (0-based) starting at color 0, one per reversal pair."""
    if k <= 1:
        return [tuple(range(k))]
    out = []
    for perm in permutations(range(1, k)):
        if len(perm) >= 2 and perm[0] > perm[-1]:
            continue
        out.append((0,) + perm)
    return out


def exact_bf_permutations(instance: Instance, cap: Optional[int] = None) -> SolveReport:
    """True optimum by enumerating transversals and cyclic color orders."""
    cap = enumeration_cap() if cap is None else cap
    buckets = _check_buckets(instance)
    k = instance.k
    if k > MAX_BF_K:
        raise CapExceeded(f"instance too large for enumeration: k={k} > {MAX_BF_K}")
    orders = cyclic_orders(k)
    size = math.prod(len(b) for b in buckets) * len(orders)
    if size > cap:
        raise CapExceeded(
            f"instance too large for enumeration: {size} candidate tours > cap {cap}"
        )
    t0 = time.perf_counter()
    coords = _coords(instance)
    best = math.inf
    best_seq: tuple[int, ...] = ()
    for combo in product(*buckets):
        for order in orders:
            seq = tuple(combo[c] for c in order)
            per = perimeter([coords[i] for i in seq], closed=True)
            if per < best or (per == best and seq < best_seq):
                best, best_seq = per, seq
    elapsed = time.perf_counter() - t0
    return SolveReport("exact-bf", Tour(best_seq, best), elapsed, node_count=size)


def exact_dp(instance: Instance, cap: Optional[int] = None) -> SolveReport:
    """Subset DP: for each start point of color 1, cheapest path through all colors.

    State ``(mask, j)`` is the shortest path from the start that has visited
    the colors in ``mask`` (colors 2..k as bits) and stands at point ``j``.
    """
    cap = enumeration_cap() if cap is None else cap
    buckets = _check_buckets(instance)
    k, n = instance.k, instance.n
    work = len(buckets[0]) * (1 << (k - 1)) * n
    if k > MAX_DP_K or work > cap:
        raise CapExceeded(
            f"DP state space too large: k={k} (max {MAX_DP_K}), work {work} > cap {cap}"
        )
    t0 = time.perf_counter()
    pts = np.array(_coords(instance), dtype=float)
    dist = np.hypot(pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1])
    color = np.array([p.color - 1 for p in instance.points])
    targets = [np.array(b, dtype=np.intp) for b in buckets]
    full = (1 << (k - 1)) - 1

    best_cost = math.inf
    best_order: list[int] = []
    for s in buckets[0]:
        cost = np.full((full + 1, n), np.inf)
        parent = np.full((full + 1, n), -1, dtype=np.intp)
        cost[0, s] = 0.0
        for mask in range(full + 1):
            row = cost[mask]
            lasts = np.flatnonzero(np.isfinite(row))
            if lasts.size == 0:
                continue
            for c in range(1, k):
                bit = 1 << (c - 1)
                if mask & bit:
                    continue
                tg = targets[c]
                cand = row[lasts, None] + dist[np.ix_(lasts, tg)]
                arg = cand.argmin(axis=0)
                vals = cand[arg, np.arange(len(tg))]
                nxt = mask | bit
                better = vals < cost[nxt, tg]
                cost[nxt, tg[better]] = vals[better]
                parent[nxt, tg[better]] = lasts[arg[better]]
        ends = np.flatnonzero(np.isfinite(cost[full]))
        totals = cost[full, ends] + dist[ends, s]
        j = int(ends[totals.argmin()])
        total = float(totals.min())
        if total < best_cost:
            best_cost = total
            order = [j]
            mask = full
            while mask:
                prev = int(parent[mask, j])
                mask &= ~(1 << (int(color[j]) - 1))
                j = prev
                order.append(j)
            best_order = order[::-1]
    elapsed = time.perf_counter() - t0
    return SolveReport("exact-dp", _tour(_coords(instance), best_order), elapsed, node_count=work)


def approx_onion(instance: Instance) -> SolveReport:
    """MCSC, then one point per color inside it, visited layer by layer.

    Layers are appended outermost first, each clockwise from its leftmost point;
    the cycle closes back to the first point.
    """
    t0 = time.perf_counter()
    circle = min_color_spanning_circle(instance)
    msp = build_msp(instance, circle)
    coords = _coords(instance)
    layers = [[msp[i] for i in layer] for layer in onion_layers([coords[i] for i in msp])]
    order = [i for layer in layers for i in layer]
    tour = _tour(coords, order)
    elapsed = time.perf_counter() - t0
    return SolveReport("approx", tour, elapsed, mcsc=circle, layers=layers)


SOLVERS: dict[str, Callable[[Instance], SolveReport]] = {
    "exact-fixed": exact_fixed_order,
    "exact-bf": exact_bf_permutations,
    "exact-dp": exact_dp,
    "approx": approx_onion,
}


def solve(instance: Instance, algorithm: str) -> SolveReport:
    try:
        fn = SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(SOLVERS)}") from None
    return fn(instance)
