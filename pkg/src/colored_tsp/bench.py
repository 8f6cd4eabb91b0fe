"""Benchmark grid: time and perimeter per (n, k, seed, algorithm).

Each cell times only the solver call. Cells that finish in under a second are
repeated and the median of three timings is kept. ``ratio_to_exact`` is the
perimeter divided by the true optimum from :func:`exact_dp`, when the DP fits
under the cap.
"""
from __future__ import annotations

import csv
import logging
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .instance_io import generate
from .solvers import SOLVERS, CapExceeded, exact_dp

log = logging.getLogger(__name__)

HEADER = ("n", "k", "seed", "algorithm", "elapsed_s", "perimeter", "ratio_to_exact")
SKIPPED = "skipped"
REPEAT_BELOW_S = 1.0


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    seed: int
    algorithm: str
    elapsed_s: Optional[float]
    perimeter: Optional[float]
    ratio_to_exact: Optional[float] = None
    order: tuple[int, ...] = ()

    @property
    def skipped(self) -> bool:
        return self.perimeter is None

    def sort_key(self):
        return (self.n, self.k, self.seed, self.algorithm)

    def csv_fields(self) -> list[str]:
        if self.skipped:
            return [str(self.n), str(self.k), str(self.seed), self.algorithm, SKIPPED, SKIPPED, ""]
        ratio = "" if self.ratio_to_exact is None else repr(self.ratio_to_exact)
        return [str(self.n), str(self.k), str(self.seed), self.algorithm,
                repr(self.elapsed_s), repr(self.perimeter), ratio]


def _timed(fn, instance, reps: int):
    t0 = time.perf_counter()
    report = fn(instance)
    times = [time.perf_counter() - t0]
    if times[0] < REPEAT_BELOW_S:
        for _ in range(reps - 1):
            t0 = time.perf_counter()
            fn(instance)
            times.append(time.perf_counter() - t0)
    return report, statistics.median(times)


def run_cell(n: int, k: int, seed: int, algos: Sequence[str], width: float = 100.0,
             height: float = 100.0, reps: int = 3) -> list[BenchRow]:
    if n < k:
        return [BenchRow(n, k, seed, a, None, None) for a in algos]
    instance = generate(n, k, seed, width, height)
    try:
        opt: Optional[float] = exact_dp(instance).tour.perimeter
    except CapExceeded:
        opt = None

    rows = []
    for algo in algos:
        try:
            report, elapsed = _timed(SOLVERS[algo], instance, reps)
        except CapExceeded as e:
            log.info("n=%d k=%d seed=%d %s: skipped (%s)", n, k, seed, algo, e)
            rows.append(BenchRow(n, k, seed, algo, None, None))
            continue
        per = report.tour.perimeter
        ratio = None
        if opt is not None:
            ratio = per / opt if opt > 0 else (1.0 if per == 0 else math.inf)
        log.info("n=%d k=%d seed=%d %s: %.6fs perimeter=%.6f", n, k, seed, algo, elapsed, per)
        rows.append(BenchRow(n, k, seed, algo, elapsed, per, ratio, report.tour.order))
    return rows


def _run_cell_args(args):
    return run_cell(*args)


def run_bench(ns: Iterable[int], ks: Iterable[int], seeds: Iterable[int], algos: Sequence[str],
              width: float = 100.0, height: float = 100.0, reps: int = 3,
              workers: int = 1) -> list[BenchRow]:
    unknown = [a for a in algos if a not in SOLVERS]
    if unknown:
        raise ValueError(f"unknown algorithms {unknown}; choose from {sorted(SOLVERS)}")
    cells = [(n, k, s, tuple(algos), width, height, reps)
             for n in ns for k in ks for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_cell_args, cells))
    else:
        chunks = [run_cell(*c) for c in cells]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=BenchRow.sort_key)
    return rows


def write_bench_csv(rows: Sequence[BenchRow], path) -> None:
    """Append rows to ``path``; a new or empty file gets the header first."""
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    if not fresh:
        with path.open(encoding="utf-8", newline="") as fh:
            first = next(csv.reader(fh), None)
        if tuple(first or ()) != HEADER:
            raise ValueError(f"{path}: existing header {first} does not match {list(HEADER)}")
    with path.open("a", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if fresh:
            w.writerow(HEADER)
        for row in sorted(rows, key=BenchRow.sort_key):
            w.writerow(row.csv_fields())


def read_bench_csv(path) -> list[BenchRow]:
    rows = []
    with Path(path).open(encoding="utf-8", newline="") as fh:
        for rec in csv.DictReader(fh):
            skipped = rec["perimeter"] == SKIPPED
            rows.append(BenchRow(
                int(rec["n"]), int(rec["k"]), int(rec["seed"]), rec["algorithm"],
                None if skipped else float(rec["elapsed_s"]),
                None if skipped else float(rec["perimeter"]),
                float(rec["ratio_to_exact"]) if rec["ratio_to_exact"] else None,
            ))
    return rows


def median_times(rows: Iterable[BenchRow]) -> dict[tuple[int, int, str], float]:
    """Median elapsed over seeds, keyed by (n, k, algorithm); skipped cells ignored."""
    groups: dict[tuple[int, int, str], list[float]] = {}
    for r in rows:
        if not r.skipped:
            groups.setdefault((r.n, r.k, r.algorithm), []).append(r.elapsed_s)
    return {key: statistics.median(v) for key, v in groups.items()}
