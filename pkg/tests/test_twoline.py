import math

import numpy as np
import pytest

from vwidth.errors import DegenerateInput, EmptySide, NoValidVShape
from vwidth.exact import solve_exact
from vwidth.geom import Line, diameter
from vwidth.twoline import TwoLineInstance, _splits, cut_candidates, min_vshape_two_lines
from vwidth.vshape import VShape, contains_all, widths


def random_instance(seed):
    """Points on two random crossing lines, each line's points spread across z or not."""
    rng = np.random.default_rng(seed)
    while True:
        z = rng.uniform(-1, 1, 2)
        a1, a2 = rng.uniform(0, math.pi, 2)
        if abs(math.sin(a1 - a2)) >= 0.05:
            break
    d1 = np.array([math.cos(a1), math.sin(a1)])
    d2 = np.array([math.cos(a2), math.sin(a2)])
    n1, n2 = rng.integers(2, 7, 2)
    P = np.r_[z + np.outer(rng.uniform(rng.uniform(-3, 1), 3, n1), d1),
              z + np.outer(rng.uniform(rng.uniform(-3, 1), 3, n2), d2)]
    inst = TwoLineInstance(Line.with_direction(tuple(z), tuple(d1)),
                           Line.with_direction(tuple(z), tuple(d2)), P)
    return inst


def test_zero_width_v():
    pts = [(-2, 2), (-1, 1), (1, 1), (2, 2), (3, 3)]
    inst = TwoLineInstance(Line.through((0, 0), (1, 1)), Line.through((0, 0), (-1, 1)), pts)
    rep = min_vshape_two_lines(inst)
    assert rep.width == 0 and contains_all(rep.best, pts)


def test_instance_validation():
    with pytest.raises(DegenerateInput):
        TwoLineInstance(Line.through((0, 0), (1, 0)), Line.through((0, 1), (1, 1)), [(0, 0)])
    with pytest.raises(DegenerateInput):
        TwoLineInstance(Line.through((0, 0), (1, 0)), Line.through((0, 0), (0, 1)), [(3, 3)])


def test_symmetric_instance_gives_symmetric_v():
    # mirror-symmetric about the y axis: lines y = +-x, three points each
    pts = [(1, 1), (2, 2), (-1, -1), (-1, 1), (-2, 2), (1, -1)]
    inst = TwoLineInstance(Line.through((0, 0), (1, 1)), Line.through((0, 0), (-1, 1)), pts)
    rep = min_vshape_two_lines(inst)
    v = rep.best
    assert contains_all(v, pts)
    assert rep.width == pytest.approx(solve_exact(pts).width, abs=1e-9)
    assert abs(v.x[0]) <= 1e-9 and abs(v.y[0]) <= 1e-9
    assert v.dir_left == pytest.approx((-v.dir_right[0], v.dir_right[1]), abs=1e-9)
    # the mirrored V covers the (mirror-invariant) point set with the same width
    flip = lambda p: (-p[0], p[1])
    m = VShape(flip(v.x), flip(v.y), flip(v.dir_right), flip(v.dir_left))
    assert contains_all(m, pts, 1e-9) and widths(m)[2] == pytest.approx(rep.width, abs=1e-12)


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_exact_solver(seed):
    inst = random_instance(seed)
    rep = min_vshape_two_lines(inst)
    assert contains_all(rep.best, inst.pts, 1e-7)
    assert abs(rep.width - solve_exact(inst.pts).width) <= 1e-6 * diameter(inst.pts)


def test_one_point_off_pattern_matches_exact():
    pts = [(1, 1), (2, 2), (3, 3), (-1, 1), (-2, 2), (0.5, -0.5)]
    inst = TwoLineInstance(Line.through((0, 0), (1, 1)), Line.through((0, 0), (-1, 1)), pts)
    rep = min_vshape_two_lines(inst)
    assert rep.width > 0
    assert rep.width == pytest.approx(solve_exact(pts).width, abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_every_split_output_covers(seed):
    inst = random_instance(seed)
    for case, split in _splits(inst, 1e-8):
        for shift in (0.0, 1e-8, -1e-8):
            ln = Line(split.normal, split.offset + shift)
            try:
                v = cut_candidates(inst, ln)
            except (EmptySide, NoValidVShape):
                continue
            assert contains_all(v, inst.pts, 1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_case4_splits_not_separated_by_z(seed):
    inst = random_instance(seed)
    z = np.asarray(inst.z)
    n_case4 = 0
    for case, split in _splits(inst, 1e-8):
        if case != 4:
            continue
        n_case4 += 1
        n = np.asarray(split.normal)
        k = 1 if abs(np.dot(n, inst.l1.direction)) > 0.999999 else 2
        mid = split.offset - n @ z
        ts = (inst.on_line(k) - z) @ n
        a, b = ts[ts < mid].max(), ts[ts > mid].min()
        assert not (a < -1e-9 and b > 1e-9)
        # consecutive: no point of that line strictly between the pair
        assert not np.any((ts > a + 1e-12) & (ts < b - 1e-12))
    assert n_case4 > 0


def test_both_sides_singletons():
    pts = [(0.0, 0.0), (1.0, 1.0)]
    inst = TwoLineInstance(Line.through((0, 0), (1, 1)), Line.through((0, 0), (-1, 1)), pts)
    v = cut_candidates(inst, Line((1.0, 0.0), 0.5), (inst.l1.normal, inst.l2.normal))
    assert contains_all(v, pts)
