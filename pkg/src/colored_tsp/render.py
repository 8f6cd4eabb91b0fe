"""SVG drawings of an instance and, optionally, a tour.

The output is plain SVG so tests can inspect it as text: points are
``<circle class="point">``, the tour is a single ``<polygon class="tour">``
with one vertex per visited point, and the color-spanning circle (when the
report carries one) is ``<circle class="mcsc">``.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Optional

from .instance_io import Instance
from .solvers import SolveReport

# tab20
PALETTE = (
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c",
    "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
    "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
    "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5",
)

SVG_NS = "http://www.w3.org/2000/svg"


def color_fill(color: int) -> str:
    return PALETTE[(color - 1) % len(PALETTE)]


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(instance: Instance, report: Optional[SolveReport] = None,
               size: float = 600.0, margin: float = 20.0) -> str:
    xs = [p.x for p in instance.points]
    ys = [p.y for p in instance.points]
    circle = report.mcsc if report is not None else None
    if circle is not None:
        (cx, cy), r = circle.center, circle.radius
        xs += [cx - r, cx + r]
        ys += [cy - r, cy + r]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    scale = (size - 2 * margin) / span

    # SVG y grows downward; flip so the picture matches the plane.
    def sx(x):
        return margin + (x - x0) * scale

    def sy(y):
        return margin + (y1 - y) * scale

    width = 2 * margin + (x1 - x0) * scale
    height = 2 * margin + (y1 - y0) * scale
    root = ET.Element("svg", {
        "xmlns": SVG_NS,
        "width": _fmt(width),
        "height": _fmt(height),
        "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}",
    })
    title = f"n={instance.n} k={instance.k}"
    if report is not None:
        title += f" {report.algorithm} perimeter={report.tour.perimeter:.6g}"
    ET.SubElement(root, "title").text = title
    ET.SubElement(root, "rect", {"width": "100%", "height": "100%", "fill": "white"})

    if circle is not None:
        ET.SubElement(root, "circle", {
            "class": "mcsc",
            "cx": _fmt(sx(circle.center[0])), "cy": _fmt(sy(circle.center[1])),
            "r": _fmt(circle.radius * scale),
            "fill": "none", "stroke": "#555555", "stroke-dasharray": "4 3",
        })

    if report is not None and report.tour.order:
        pts = " ".join(
            f"{_fmt(sx(instance.points[i].x))},{_fmt(sy(instance.points[i].y))}"
            for i in report.tour.order
        )
        ET.SubElement(root, "polygon", {
            "class": "tour", "points": pts,
            "fill": "none", "stroke": "black", "stroke-width": "1.5",
        })

    g = ET.SubElement(root, "g", {"class": "points"})
    for i, p in enumerate(instance.points):
        ET.SubElement(g, "circle", {
            "class": "point", "data-index": str(i), "data-color": str(p.color),
            "cx": _fmt(sx(p.x)), "cy": _fmt(sy(p.y)), "r": "3",
            "fill": color_fill(p.color), "stroke": "black", "stroke-width": "0.5",
        })
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def write_svg(instance: Instance, path, report: Optional[SolveReport] = None) -> None:
    Path(path).write_text(render_svg(instance, report), encoding="utf-8", newline="\n")


def tour_vertices(svg_text: str) -> list[tuple[float, float]]:
    """Vertices of the ``tour`` polygon in an SVG produced by :func:`render_svg`."""
    root = ET.fromstring(svg_text)
    for el in root.iter(f"{{{SVG_NS}}}polygon"):
        if el.get("class") == "tour":
            return [tuple(float(v) for v in pair.split(",")) for pair in el.get("points").split()]
    return []
