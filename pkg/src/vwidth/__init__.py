"""Minimum-width V-shapes covering planar point sets.

Quick start::

    import numpy as np
    from vwidth import solve_exact
    rep = solve_exact(np.random.default_rng(1).random((50, 2)))
    rep.width, rep.best
"""

from .approx import PlugMode, approx_vshape, two_strip_cover
from .errors import (EmptyInput, InvalidParameter, NoCandidate, NoValidVShape, ParseError,
                     TooLarge, VShapeError)
from .exact import SolveReport, solve_exact
from .generate import gen_instance
from .io import ResultRecord, emit_result, parse_points
from .oracle import brute_force_optimum, brute_force_two_strip, grid_search_optimum
from .ptas import AnchorMode, CoresetMode, solve_ptas
from .vshape import CanonicalType, VShape, balance, contains_all, widths

__version__ = "0.1.0"

__all__ = [
    "AnchorMode", "CanonicalType", "CoresetMode", "EmptyInput", "InvalidParameter",
    "NoCandidate", "NoValidVShape", "ParseError", "PlugMode", "ResultRecord", "SolveReport",
    "TooLarge", "VShape", "VShapeError", "approx_vshape", "balance", "brute_force_optimum",
    "brute_force_two_strip", "contains_all", "emit_result", "gen_instance", "grid_search_optimum",
    "parse_points", "solve_exact", "solve_ptas", "two_strip_cover", "widths",
]
