import xml.etree.ElementTree as ET

from colored_tsp.instance_io import generate
from colored_tsp.render import PALETTE, SVG_NS, color_fill, render_svg, tour_vertices
from colored_tsp.solvers import approx_onion, exact_dp


def _circles(svg, cls):
    root = ET.fromstring(svg)
    return [c for c in root.iter(f"{{{SVG_NS}}}circle") if c.get("class") == cls]


def test_approx_svg_has_k_vertices_and_circle():
    inst = generate(70, 7, seed=42)
    svg = render_svg(inst, approx_onion(inst))
    assert len(tour_vertices(svg)) == 7
    assert len(_circles(svg, "mcsc")) == 1
    assert len(_circles(svg, "point")) == 70


def test_exact_svg_has_no_circle():
    inst = generate(12, 4, seed=1)
    svg = render_svg(inst, exact_dp(inst))
    assert len(tour_vertices(svg)) == 4
    assert _circles(svg, "mcsc") == []


def test_points_only():
    inst = generate(5, 3, seed=0)
    svg = render_svg(inst)
    assert tour_vertices(svg) == []
    fills = {c.get("data-color"): c.get("fill") for c in _circles(svg, "point")}
    assert fills == {str(c): color_fill(c) for c in (1, 2, 3)}


def test_palette_is_fixed_twenty():
    assert len(PALETTE) == len(set(PALETTE)) == 20
    assert color_fill(21) == color_fill(1)


def test_y_axis_flipped():
    inst = generate(6, 2, seed=3)
    svg = render_svg(inst)
    by_index = {int(c.get("data-index")): float(c.get("cy")) for c in _circles(svg, "point")}
    lo = min(range(6), key=lambda i: inst.points[i].y)
    hi = max(range(6), key=lambda i: inst.points[i].y)
    assert by_index[lo] > by_index[hi]
