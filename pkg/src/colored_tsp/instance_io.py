"""Instances: data model, seeded generation, JSON/CSV files, and report files."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Optional

from .geometry import perimeter
from .rng import Xoshiro256

if TYPE_CHECKING:
    from .solvers import SolveReport

PERIMETER_CHECK_TOL = 1e-6


class InstanceError(ValueError):
    """An instance violates its invariants (color range, coverage, n >= k)."""


class FormatError(ValueError):
    """A file could not be parsed; the message names the line or field."""


@dataclass(frozen=True)
class ColoredPoint:
    x: float
    y: float
    color: int

    def __getitem__(self, i):
        return (self.x, self.y)[i]

    def __len__(self):
        return 2


@dataclass(frozen=True)
class InstanceMeta:
    seed: int
    width: float
    height: float


@dataclass(frozen=True)
class Instance:
    points: tuple[ColoredPoint, ...]
    k: int
    meta: Optional[InstanceMeta] = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.k < 1:
            raise InstanceError(f"k must be positive, got {self.k}")
        if len(self.points) < self.k:
            raise InstanceError(f"n={len(self.points)} is smaller than k={self.k}")
        seen = set()
        for i, p in enumerate(self.points):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise InstanceError(f"point {i} has non-finite coordinates")
            if not 1 <= p.color <= self.k:
                raise InstanceError(f"point {i} has color {p.color} outside 1..{self.k}")
            seen.add(p.color)
        missing = sorted(set(range(1, self.k + 1)) - seen)
        if missing:
            raise InstanceError(f"color class empty: {missing}")

    @property
    def n(self) -> int:
        return len(self.points)

    def buckets(self) -> list[list[int]]:
        """Point indices per color; ``buckets()[c - 1]`` holds color ``c``."""
        out: list[list[int]] = [[] for _ in range(self.k)]
        for i, p in enumerate(self.points):
            out[p.color - 1].append(i)
        return out

    def colors_of(self, order) -> list[int]:
        return [self.points[i].color for i in order]


def generate(n: int, k: int, seed: int, width: float = 100.0, height: float = 100.0) -> Instance:
    """Uniform random points in [0, width] x [0, height].

    Draws come from :class:`~colored_tsp.rng.Xoshiro256` in this order, per
    point: x, y, then (for points after the first k) the color. The first k
    points take colors 1..k so every class is non-empty.
    """
    if k < 1 or n < k:
        raise InstanceError(f"need n >= k >= 1, got n={n}, k={k}")
    rng = Xoshiro256(seed)
    pts = []
    for i in range(n):
        x = rng.random() * width
        y = rng.random() * height
        color = i + 1 if i < k else rng.randint(1, k)
        pts.append(ColoredPoint(x, y, color))
    return Instance(tuple(pts), k, InstanceMeta(seed, float(width), float(height)))


# --- instance files -------------------------------------------------------

def instance_to_dict(instance: Instance) -> dict:
    d: dict = {
        "k": instance.k,
        "points": [{"x": p.x, "y": p.y, "color": p.color} for p in instance.points],
    }
    if instance.meta is not None:
        m = instance.meta
        d["meta"] = {"seed": m.seed, "width": m.width, "height": m.height}
    return d


def instance_from_dict(d: dict) -> Instance:
    if not isinstance(d, dict):
        raise FormatError("top level must be an object")
    for key in ("k", "points"):
        if key not in d:
            raise FormatError(f"missing field {key!r}")
    k = d["k"]
    if not isinstance(k, int) or isinstance(k, bool):
        raise FormatError(f"field 'k' must be an integer, got {k!r}")
    pts = []
    for i, raw in enumerate(d["points"]):
        if not isinstance(raw, dict):
            raise FormatError(f"points[{i}] must be an object")
        for key in ("x", "y", "color"):
            if key not in raw:
                raise FormatError(f"points[{i}]: missing field {key!r}")
        x, y, color = raw["x"], raw["y"], raw["color"]
        if not isinstance(color, int) or isinstance(color, bool):
            raise FormatError(f"points[{i}]: field 'color' must be an integer")
        try:
            pts.append(ColoredPoint(float(x), float(y), color))
        except (TypeError, ValueError):
            raise FormatError(f"points[{i}]: fields 'x'/'y' must be numbers") from None
    meta = None
    if d.get("meta") is not None:
        m = d["meta"]
        try:
            meta = InstanceMeta(int(m["seed"]), float(m["width"]), float(m["height"]))
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"malformed field 'meta': {e}") from None
    return Instance(tuple(pts), k, meta)


def _fmt(v: float) -> str:
    return format(v, ".17g")


def instance_to_csv(instance: Instance) -> str:
    buf = io.StringIO()
    buf.write("x,y,color\n")
    for p in instance.points:
        buf.write(f"{_fmt(p.x)},{_fmt(p.y)},{p.color}\n")
    return buf.getvalue()


def instance_from_csv(text: str) -> Instance:
    pts = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if lineno == 1 and row[0].strip().lower() == "x":
            continue
        if len(row) != 3:
            raise FormatError(f"line {lineno}: expected 3 fields x,y,color, got {len(row)}")
        try:
            x = float(row[0])
        except ValueError:
            raise FormatError(f"line {lineno}: field 'x' is not a number: {row[0]!r}") from None
        try:
            y = float(row[1])
        except ValueError:
            raise FormatError(f"line {lineno}: field 'y' is not a number: {row[1]!r}") from None
        try:
            color = int(row[2])
        except ValueError:
            raise FormatError(f"line {lineno}: field 'color' is not an integer: {row[2]!r}") from None
        if color < 1:
            raise InstanceError(f"line {lineno}: color {color} out of range")
        pts.append(ColoredPoint(x, y, color))
    if not pts:
        raise FormatError("no points")
    return Instance(tuple(pts), max(p.color for p in pts))


def _is_csv(path: Path) -> bool:
    return path.suffix.lower() == ".csv"


def write_instance(instance: Instance, path) -> None:
    path = Path(path)
    if _is_csv(path):
        text = instance_to_csv(instance)
    else:
        text = json.dumps(instance_to_dict(instance), indent=1) + "\n"
    path.write_text(text, encoding="utf-8", newline="\n")


def read_instance(path) -> Instance:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if _is_csv(path):
        return instance_from_csv(text)
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
    return instance_from_dict(d)


# --- report files ---------------------------------------------------------

def report_to_dict(report: "SolveReport") -> dict:
    d: dict = {
        "algorithm": report.algorithm,
        "order": list(report.tour.order),
        "perimeter": report.tour.perimeter,
        "elapsed_s": report.elapsed,
    }
    if report.mcsc is not None:
        c = report.mcsc
        d["mcsc"] = {"cx": c.center[0], "cy": c.center[1], "r": c.radius}
    if report.node_count is not None:
        d["node_count"] = report.node_count
    return d


def report_from_dict(d: dict, instance: Optional[Instance] = None) -> "SolveReport":
    from .color_spanning import Circle
    from .solvers import SolveReport, Tour

    if not isinstance(d, dict):
        raise FormatError("top level must be an object")
    for key in ("algorithm", "order", "perimeter", "elapsed_s"):
        if key not in d:
            raise FormatError(f"missing field {key!r}")
    order = d["order"]
    if not isinstance(order, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in order):
        raise FormatError("field 'order' must be a list of integers")
    try:
        per = float(d["perimeter"])
        elapsed = float(d["elapsed_s"])
    except (TypeError, ValueError):
        raise FormatError("fields 'perimeter'/'elapsed_s' must be numbers") from None
    mcsc = None
    if d.get("mcsc") is not None:
        m = d["mcsc"]
        try:
            mcsc = Circle((float(m["cx"]), float(m["cy"])), float(m["r"]))
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError(f"malformed field 'mcsc': {e}") from None
    node_count = d.get("node_count")
    if node_count is not None and not isinstance(node_count, int):
        raise FormatError("field 'node_count' must be an integer")

    warnings: list[str] = []
    if instance is not None:
        bad = [i for i in order if not 0 <= i < instance.n]
        if bad:
            raise FormatError(f"field 'order': indices {bad} outside 0..{instance.n - 1}")
        if order:
            actual = perimeter([instance.points[i] for i in order], closed=True)
            if abs(actual - per) > PERIMETER_CHECK_TOL:
                warnings.append(
                    f"perimeter {per!r} disagrees with recomputed {actual!r}"
                )
    return SolveReport(
        algorithm=str(d["algorithm"]),
        tour=Tour(tuple(order), per),
        elapsed=elapsed,
        mcsc=mcsc,
        node_count=node_count,
        warnings=warnings,
    )


def write_report(report: "SolveReport", path) -> None:
    Path(path).write_text(
        json.dumps(report_to_dict(report), indent=1) + "\n", encoding="utf-8", newline="\n"
    )


def read_report(path, instance: Optional[Instance] = None) -> "SolveReport":
    """Load a report; with ``instance`` given, validate indices and the perimeter."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
    return report_from_dict(d, instance)
