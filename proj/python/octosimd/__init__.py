"""SIMD backend comparison for octree hydro and gravity kernels."""

from ._core import (
    KernelError,
    backends,
    binary,
    choose,
    compare,
    csv_header,
    fma,
    grid_info,
    lane_count,
    read_csv,
    reduce,
    run_scenario,
    sweep,
    unary,
)

__all__ = [
    "KernelError",
    "backends",
    "binary",
    "choose",
    "compare",
    "csv_header",
    "fma",
    "grid_info",
    "lane_count",
    "read_csv",
    "reduce",
    "run_scenario",
    "sweep",
    "unary",
]
