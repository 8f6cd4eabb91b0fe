"""Command line: ``colored-tsp generate | solve | bench | render``.

Exit codes: 0 success, 2 usage error, 3 instance too large for the chosen
solver, 4 I/O or parse failure. ``COLORED_TSP_CAP`` overrides the
enumeration caps.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import bench
from .instance_io import (FormatError, InstanceError, generate, read_instance,
                          read_report, write_instance, write_report)
from .render import write_svg
from .solvers import SOLVERS, CapExceeded, solve

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_IO = 4

log = logging.getLogger("colored_tsp")


def int_list(text: str) -> list[int]:
    """``"4"`` -> [4]; ``"4..8"`` -> [4, 5, 6, 7, 8]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or range a..b: {text!r}") from None


def _flatten(groups):
    return [v for g in groups for v in g]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colored-tsp", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log one line per bench cell")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--width", type=float, default=100.0)
    g.add_argument("--height", type=float, default=100.0)
    g.add_argument("--out", required=True, help=".json or .csv")

    s = sub.add_parser("solve", help="solve an instance and write a report")
    s.add_argument("--algo", choices=sorted(SOLVERS), required=True)
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--svg", help="also draw the tour here")

    b = sub.add_parser("bench", help="time solvers over an (n, k, seed) grid")
    b.add_argument("--n", type=int_list, nargs="+", required=True)
    b.add_argument("--k", type=int_list, nargs="+", required=True)
    b.add_argument("--seeds", type=int_list, nargs="+", default=[[0]])
    b.add_argument("--algos", nargs="+", choices=sorted(SOLVERS), default=["exact-fixed", "approx"])
    b.add_argument("--width", type=float, default=100.0)
    b.add_argument("--height", type=float, default=100.0)
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", required=True)

    r = sub.add_parser("render", help="draw an instance and optionally a report as SVG")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--report")
    r.add_argument("--out", required=True)
    return p


def cmd_generate(args, parser) -> int:
    if args.k < 1 or args.n < args.k:
        parser.error(f"need n >= k >= 1 (got --n {args.n} --k {args.k})")
    inst = generate(args.n, args.k, args.seed, args.width, args.height)
    write_instance(inst, args.out)
    return 0


def cmd_solve(args, parser) -> int:
    inst = read_instance(args.input)
    report = solve(inst, args.algo)
    write_report(report, args.out)
    if args.svg:
        write_svg(inst, args.svg, report)
    print(f"{report.algorithm}: perimeter {report.tour.perimeter:.10g} "
          f"in {report.elapsed:.6f}s, order {list(report.tour.order)}")
    return 0


def cmd_bench(args, parser) -> int:
    rows = bench.run_bench(
        sorted(set(_flatten(args.n))), sorted(set(_flatten(args.k))),
        sorted(set(_flatten(args.seeds))), args.algos,
        width=args.width, height=args.height, reps=args.reps, workers=args.workers,
    )
    bench.write_bench_csv(rows, args.out)
    return 0


def cmd_render(args, parser) -> int:
    inst = read_instance(args.input)
    report = read_report(args.report, inst) if args.report else None
    if report is not None:
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
    write_svg(inst, args.out, report)
    return 0


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "bench": cmd_bench, "render": cmd_render}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        return COMMANDS[args.command](args, parser)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, FormatError, InstanceError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
