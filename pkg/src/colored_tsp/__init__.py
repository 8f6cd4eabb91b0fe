"""Colored points TSP: the shortest closed tour through one point of each color."""
from .color_spanning import Circle, build_msp, min_color_spanning_circle
from .geometry import (convex_hull_boundary, distance, onion_layers, orientation,
                       perimeter)
from .instance_io import (ColoredPoint, Instance, InstanceMeta, generate, read_instance,
                          read_report, write_instance, write_report)
from .solvers import (CapExceeded, SolveReport, Tour, approx_onion, exact_bf_permutations,
                      exact_dp, exact_fixed_order, solve)

__all__ = [
    "Circle", "build_msp", "min_color_spanning_circle",
    "convex_hull_boundary", "distance", "onion_layers", "orientation", "perimeter",
    "ColoredPoint", "Instance", "InstanceMeta", "generate", "read_instance",
    "read_report", "write_instance", "write_report",
    "CapExceeded", "SolveReport", "Tour", "approx_onion", "exact_bf_permutations",
    "exact_dp", "exact_fixed_order", "solve",
]
