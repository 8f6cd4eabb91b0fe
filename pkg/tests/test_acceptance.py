"""Acceptance criteria C1-C9. Each test prints one [PASS]/[FAIL] line.

Run alone with ``pytest -v -s tests/test_acceptance.py``; the lines are also
collected into the terminal summary.
"""
import math
import time
import xml.etree.ElementTree as ET
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor

import pytest

from colored_tsp.bench import median_times, run_bench
from colored_tsp.color_spanning import min_color_spanning_circle
from colored_tsp.geometry import distance, perimeter
from colored_tsp.instance_io import ColoredPoint, Instance, generate
from colored_tsp.render import render_svg, tour_vertices
from colored_tsp.rng import Xoshiro256
from colored_tsp.solvers import approx_onion, exact_bf_permutations, exact_dp
from oracles import held_karp, transversal_sec_radius

pytestmark = pytest.mark.acceptance

EQ_TOL = 1e-9
LAYER_TOL = 1e-6
C1_BUDGET_S = 60.0
C8_BUDGET_S = 10.0
C7_RATIO = 0.05
C7_NS = (10, 15, 20, 25)
C7_KS = tuple(range(4, 9))
C7_SEEDS = (0, 1, 2)


def c1_cases():
    out = []
    for s in range(240):
        k = 1 + s % 6
        n = k + (s // 6) % (11 - k)
        out.append((n, k, 100 + s))
    return out


def c2_cases():
    return [(k, k, 500 + s) for s in range(7) for k in range(2, 10)]


def c3_cases():
    return [(n, 1 + s % min(n, 6), 900 + s) for s in range(220) for n in [2 + s % 11]]


def c4_cases():
    return [(n, 1 + s % min(n, 5), 2000 + s) for s in range(120) for n in [1 + s % 15]]


def grid_instance(seed):
    """Distinct integer coordinates in [0, 20]^2, random colors, n <= 10, k >= 2."""
    rng = Xoshiro256(seed)
    n = rng.randint(2, 10)
    k = rng.randint(2, n)
    cells = []
    while len(cells) < n:
        c = (rng.randint(0, 20), rng.randint(0, 20))
        if c not in cells:
            cells.append(c)
    colors = list(range(1, k + 1)) + [rng.randint(1, k) for _ in range(n - k)]
    return Instance(tuple(ColoredPoint(float(x), float(y), c) for (x, y), c in zip(cells, colors)), k)


def is_transversal(instance, order):
    return sorted(instance.colors_of(order)) == list(range(1, instance.k + 1))


def approx_bounds_ok(instance, report):
    r = report.mcsc.radius
    for layer in report.layers:
        if perimeter([instance.points[j] for j in layer], closed=True) > 2 * math.pi * r + LAYER_TOL:
            return False
    o = report.tour.order
    return all(distance(instance.points[a], instance.points[b]) <= 2 * r + EQ_TOL
               for a, b in zip(o, o[1:] + o[:1]))


# Each run_cN returns (fingerprint, verdict detail dict). The fingerprint holds
# perimeters and tours only, so determinism can compare runs without timings.

def run_c1():
    fp, worst = [], 0.0
    for n, k, seed in c1_cases():
        inst = generate(n, k, seed)
        dp, bf = exact_dp(inst), exact_bf_permutations(inst)
        worst = max(worst, abs(dp.tour.perimeter - bf.tour.perimeter))
        fp.append((dp.tour.perimeter, dp.tour.order, bf.tour.perimeter, bf.tour.order))
    return fp, {"worst": worst}


def run_c2():
    fp, worst = [], 0.0
    for n, k, seed in c2_cases():
        inst = generate(n, k, seed)
        dp = exact_dp(inst)
        hk = held_karp([(p.x, p.y) for p in inst.points])
        worst = max(worst, abs(dp.tour.perimeter - hk))
        fp.append((dp.tour.perimeter, dp.tour.order))
    return fp, {"worst": worst}


def run_c3():
    fp, below, invalid, bounds = [], 0, 0, 0
    for n, k, seed in c3_cases():
        inst = generate(n, k, seed)
        ap, dp = approx_onion(inst), exact_dp(inst)
        below += ap.tour.perimeter < dp.tour.perimeter - EQ_TOL
        invalid += not (is_transversal(inst, ap.tour.order) and is_transversal(inst, dp.tour.order))
        bounds += not approx_bounds_ok(inst, ap)
        fp.append((ap.tour.perimeter, ap.tour.order, dp.tour.perimeter, dp.tour.order))
    return fp, {"below": below, "invalid": invalid, "bound_violations": bounds}


def run_c4():
    fp, worst = [], 0.0
    for n, k, seed in c4_cases():
        inst = generate(n, k, seed)
        c = min_color_spanning_circle(inst)
        worst = max(worst, abs(c.radius - transversal_sec_radius(inst)))
        fp.append((c.center, c.radius))
    return fp, {"worst": worst}


def run_c6():
    fp, below = [], 0
    seen = set()
    for seed in range(150):
        inst = grid_instance(seed)
        seen.add(inst.points)
        dp = exact_dp(inst)
        below += dp.tour.perimeter < inst.k - EQ_TOL
        fp.append((dp.tour.perimeter, dp.tour.order))
    return fp, {"below": below, "distinct": len(seen)}


def run_c8():
    inst = generate(1000, 20, seed=2024)
    t0 = time.perf_counter()
    rep = approx_onion(inst)
    elapsed = time.perf_counter() - t0
    svg = render_svg(inst, rep)
    ET.fromstring(svg)
    return ([(rep.tour.perimeter, rep.tour.order, rep.mcsc.radius)],
            {"elapsed": elapsed, "vertices": len(tour_vertices(svg)),
             "valid": is_transversal(inst, rep.tour.order), "bounds": approx_bounds_ok(inst, rep)})


def run_c7(workers=1):
    rows = run_bench(C7_NS, C7_KS, C7_SEEDS, ["exact-fixed", "approx"], workers=workers)
    fp = [(r.sort_key(), r.perimeter, r.order) for r in rows]
    return fp, {"rows": rows}


RUNNERS = {"C1": run_c1, "C2": run_c2, "C3": run_c3, "C4": run_c4, "C6": run_c6, "C8": run_c8}
_first = {}


def first_run(cid):
    if cid not in _first:
        t0 = time.perf_counter()
        fp, info = RUNNERS[cid]()
        info["wall"] = time.perf_counter() - t0
        _first[cid] = (fp, info)
    return _first[cid]


def test_c1_dp_matches_bruteforce(criterion):
    fp, info = first_run("C1")
    ok = len(fp) >= 200 and info["worst"] <= EQ_TOL and info["wall"] < C1_BUDGET_S
    criterion("C1", ok, f"{len(fp)} instances, max |dp-bf|={info['worst']:.3g}, {info['wall']:.1f}s")
    assert ok


def test_c2_dp_matches_held_karp_when_k_equals_n(criterion):
    fp, info = first_run("C2")
    ok = len(fp) >= 50 and info["worst"] <= EQ_TOL
    criterion("C2", ok, f"{len(fp)} instances n=k<=9, max |dp-hk|={info['worst']:.3g}")
    assert ok


def test_c3_approx_never_below_optimum(criterion):
    fp, info = first_run("C3")
    ok = len(fp) >= 200 and info["below"] == 0 and info["invalid"] == 0
    criterion("C3", ok, f"{len(fp)} instances, below={info['below']}, invalid={info['invalid']}")
    assert ok


def test_c4_mcsc_matches_transversal_oracle(criterion):
    fp, info = first_run("C4")
    ok = len(fp) >= 100 and info["worst"] <= EQ_TOL
    criterion("C4", ok, f"{len(fp)} instances, max |r-oracle|={info['worst']:.3g}")
    assert ok


def test_c5_layer_and_edge_bounds(criterion):
    c3_fp, c3 = first_run("C3")
    _, c8 = first_run("C8")
    inst = generate(70, 7, seed=42)
    extra = approx_bounds_ok(inst, approx_onion(inst))
    ok = c3["bound_violations"] == 0 and c8["bounds"] and extra
    criterion("C5", ok, f"{c3['bound_violations']} violations over {len(c3_fp)} runs, "
                        f"n=70 ok={extra}, n=1000 ok={c8['bounds']}")
    assert ok


def test_c6_grid_lower_bound(criterion):
    fp, info = first_run("C6")
    ok = info["distinct"] >= 100 and info["below"] == 0
    criterion("C6", ok, f"{info['distinct']} distinct grid instances, below k: {info['below']}")
    assert ok


@pytest.fixture(scope="module")
def c7_rows():
    return run_c7(workers=1)


def test_c7_timing_trend(criterion, c7_rows):
    _, info = c7_rows
    med = median_times(info["rows"])
    fails = []
    for k in C7_KS:
        if k < 5:
            continue
        series = [med[(n, k, "exact-fixed")] for n in C7_NS]
        if not all(a < b for a, b in zip(series, series[1:])):
            fails.append(f"k={k} not increasing {['%.2gms' % (t * 1e3) for t in series]}")
        ratio = med[(25, k, "approx")] / med[(25, k, "exact-fixed")]
        if not ratio < C7_RATIO:
            fails.append(f"k={k} approx/fixed at n=25 = {ratio:.3f}")
    ok = not fails
    criterion("C7", ok, "trend holds for k>=5" if ok else "; ".join(fails))
    assert ok


def test_c8_large_instance(criterion):
    _, info = first_run("C8")
    ok = info["elapsed"] < C8_BUDGET_S and info["vertices"] == 20 and info["valid"]
    criterion("C8", ok, f"n=1000 k=20 approx {info['elapsed']:.2f}s, {info['vertices']} tour vertices")
    assert ok


def _rerun(cid):
    return RUNNERS[cid]()[0]


def test_c9_determinism(criterion, c7_rows):
    ids = sorted(RUNNERS)
    first = {cid: first_run(cid)[0] for cid in ids}
    again = {cid: _rerun(cid) for cid in ids}
    with ThreadPoolExecutor(max_workers=2) as pool:
        threaded = dict(zip(ids, pool.map(_rerun, ids)))
    with ProcessPoolExecutor(max_workers=2) as pool:
        procs = dict(zip(ids, pool.map(_rerun, ids)))
    bench_par = run_c7(workers=2)[0]
    diff = [cid for cid in ids if not (first[cid] == again[cid] == threaded[cid] == procs[cid])]
    if bench_par != c7_rows[0]:
        diff.append("C7")
    ok = not diff
    criterion("C9", ok, "identical across rerun, threads, processes, bench workers"
              if ok else f"differs: {diff}")
    assert ok
