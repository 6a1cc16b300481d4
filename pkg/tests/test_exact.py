import math

import numpy as np
import pytest

from conftest import diam, small_instances
from vwidth.errors import EmptyInput
from vwidth.exact import (_Tracker, enumerate_empty_wedges, solve_both_inner, solve_both_outer,
                          solve_exact, solve_inner_outer)
from vwidth.generate import gen_instance
from vwidth.hull import build_halfplane_index
from vwidth.oracle import brute_force_optimum, brute_force_two_strip
from vwidth.vshape import contains_all, is_canonical, widths

UNIT_SQUARE_CENTER = [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)]


def test_unit_square_plus_center():
    rep = solve_exact(UNIT_SQUARE_CENTER)
    assert rep.width == pytest.approx(brute_force_optimum(UNIT_SQUARE_CENTER).width, abs=1e-9)
    assert rep.width == pytest.approx(math.sqrt(0.5), abs=1e-9)


def test_two_crossing_lines_width_zero():
    pts = [(-2, 2), (-1, 1), (1, 1), (2, 2), (3, 3), (-3, 3)]
    rep = solve_exact(pts)
    assert rep.width == pytest.approx(0.0, abs=1e-9)
    assert contains_all(rep.best, pts, 1e-9)


def test_collinear_and_tiny_inputs():
    rep = solve_exact([(0, 0), (1, 1), (2, 2), (5, 5)])
    assert rep.degenerate and rep.width == 0
    assert solve_exact([(3, 4)]).width == 0
    with pytest.raises(EmptyInput):
        solve_exact(np.empty((0, 2)))
    # four points on two rays leaving a common apex
    pts = [(1, 1), (2, 2), (-1, 1), (-2, 2)]
    rep = solve_exact(pts)
    assert rep.width == pytest.approx(0.0, abs=1e-9)
    assert contains_all(rep.best, pts)


def test_recovers_constructed_both_outer_shape():
    # apexes x=(0,0) inner, y=(0,-1) outer, arms at 45 degrees: width sqrt(1/2)
    pts = [(-1, 0), (-2, 1), (1, 0), (2, 1), (0, 0.0), (-0.5, 0.7), (0.6, 0.9)]
    rep = solve_exact(pts)
    assert rep.width <= math.sqrt(0.5) + 1e-9
    assert rep.width == pytest.approx(brute_force_optimum(pts).width, abs=1e-9)


@pytest.mark.parametrize("kind, seed, P", small_instances(30), ids=lambda x: str(x)[:12])
def test_matches_oracle_and_invariants(kind, seed, P):
    rep = solve_exact(P)
    d = diam(P)
    assert contains_all(rep.best, P, 1e-9 * d)
    assert rep.width == pytest.approx(widths(rep.best)[2], abs=1e-12)
    assert abs(rep.width - brute_force_optimum(P).width) <= 1e-6 * d
    assert brute_force_two_strip(P) <= rep.width + 1e-9 * d
    assert is_canonical(rep.best, P, 1e-7 * d)[0]


@pytest.mark.parametrize("seed", range(5))
def test_tier2_index_agrees(seed):
    P = gen_instance("uniform", {"n": 10}, seed)
    assert solve_exact(P, index_tier=2).width == pytest.approx(solve_exact(P).width, abs=1e-12)


def test_balanced_and_optima():
    P = gen_instance("uniform", {"n": 9}, 4)
    plain = solve_exact(P)
    bal = solve_exact(P, balanced=True)
    assert bal.balanced
    wl, wr, w = widths(bal.best)
    assert wl == pytest.approx(wr, abs=1e-12) and w == pytest.approx(plain.width, abs=1e-12)
    assert contains_all(bal.best, P)
    rep = solve_exact(P, enumerate_optima=True)
    assert rep.optima and all(contains_all(v, P, 1e-9) for v in rep.optima)
    assert all(abs(widths(v)[2] - rep.width) <= 1e-8 for v in rep.optima)


def test_case_solvers_cover_and_bound():
    P = gen_instance("uniform", {"n": 40}, 11)
    opt = solve_exact(P).width
    idx = build_halfplane_index(P)
    for solve in (lambda t: solve_both_outer(P, idx, t), lambda t: solve_inner_outer(P, t),
                  lambda t: solve_both_inner(P, idx, t)):
        tr = solve(_Tracker(P))
        if tr.best is not None:
            assert contains_all(tr.best, P, 1e-9)
            assert tr.width >= opt - 1e-9


def test_triangle_with_deep_interior_has_wedges():
    rng = np.random.default_rng(2)
    tri = np.array([(0, 0), (4, 0), (2, 3.5)])
    inner = np.array([2, 1.2]) + 0.3 * rng.random((6, 2))
    P = np.concatenate([tri, inner])
    wedges = enumerate_empty_wedges(P)
    assert len(wedges) > 0
    tr = solve_both_inner(P, build_halfplane_index(P), _Tracker(P))
    assert tr.best is None or contains_all(tr.best, P, 1e-9)


def test_moderate_n_covers():
    P = gen_instance("noisy_corner", {"n": 300, "sigma": 0.02}, 8)
    rep = solve_exact(P)
    assert contains_all(rep.best, P, 1e-9)
    assert rep.canonical_type is not None
