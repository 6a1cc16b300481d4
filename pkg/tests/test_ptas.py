import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import diam, rotation_trial, small_instances
from vwidth.errors import InvalidParameter
from vwidth.exact import solve_exact
from vwidth.generate import gen_instance
from vwidth.oracle import brute_force_optimum
from vwidth.ptas import (AnchorCandidate, AnchorMode, CoresetMode, DirectionalCoreset, beta_gamma,
                         candidate_anchor_pairs, coreset_insert, direction_grid,
                         solve_fixed_direction, solve_ptas)
from vwidth.vshape import contains_all, widths


def test_beta_gamma_formula_and_clamps():
    b, g = beta_gamma(0.6, 1.0, 1.0, 1.0)
    assert b == pytest.approx(math.asin(0.1))
    assert g == pytest.approx(b + math.pi / 2)
    b, _ = beta_gamma(12.0, 1.0, 1.0, 1.0)
    assert b == pytest.approx(math.pi / 2)
    b, g = beta_gamma(0.1, 0.01, 0.02, 1.0)
    assert g == pytest.approx(b + math.asin(0.02))
    for bad in ((0, 1, 1, 1), (0.1, 0, 1, 1), (0.1, 1, 1, 0), (-1, 1, 1, 1)):
        with pytest.raises(InvalidParameter):
            beta_gamma(*bad)


def test_direction_grid_sanity_and_scaling():
    a = AnchorCandidate((0.0, 0.0), (1.0, 0.3))
    g = direction_grid(a, 0.2, 0.01, 0.05)
    m = math.ceil(g.gamma / g.beta - 1e-12)
    assert g.steps == m and len(g.thetas) == 2 * m + 1
    assert g.thetas[m] == pytest.approx(a.theta)
    assert np.allclose(np.diff(g.thetas), g.beta)
    for eps in (0.4, 0.2, 0.1, 0.05):
        n1 = len(direction_grid(a, eps, 0.01, 0.05).thetas)
        n2 = len(direction_grid(a, eps / 2, 0.01, 0.05).thetas)
        assert 1.5 < n2 / n1 < 2.5


def test_anchor_pairs():
    two = [(0, 0), (1, 1)]
    for mode in AnchorMode:
        pairs = candidate_anchor_pairs(two, mode)
        assert len(pairs) == 1
    P = gen_instance("uniform", {"n": 17}, 1)
    assert len(candidate_anchor_pairs(P, "all")) == 17 * 16 // 2
    diam_pairs = candidate_anchor_pairs(P, "diametral")
    assert 1 <= len(diam_pairs) <= 7
    with pytest.raises(InvalidParameter):
        AnchorCandidate((1, 1), (1, 1))


def _widths(X, N):
    pr = np.asarray(X) @ N.T
    return pr.max(axis=0) - pr.min(axis=0)


N720 = np.stack([np.cos(np.arange(720) * math.pi / 720), np.sin(np.arange(720) * math.pi / 720)], 1)


def test_kernel_coreset_on_64gon():
    eps = 0.1
    ang = 2 * math.pi * np.arange(64) / 64
    G = np.c_[np.cos(ang), np.sin(ang)]
    cs = DirectionalCoreset(CoresetMode.KERNEL, eps)
    for p in G:
        coreset_insert(cs, p)
    assert len(cs) < 64
    ratio = _widths(cs.points(), N720) / _widths(G, N720)
    assert ratio.min() >= 1 - eps / 3


def test_exact_coreset_is_the_hull_and_interior_points_do_nothing():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(50, 2))
    cs = DirectionalCoreset(CoresetMode.EXACT)
    for p in X:
        coreset_insert(cs, p)
    assert np.allclose(_widths(cs.points(), N720), _widths(X, N720))
    before = _widths(cs.points(), N720)
    coreset_insert(cs, X.mean(axis=0))
    assert np.allclose(_widths(cs.points(), N720), before)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1.0, 0.5, 0.1, 0.05, 0.01]),
       st.floats(1e-4, 1.0))
def test_kernel_guarantee_after_random_insertions(seed, eps, aspect):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(300, 2)) * (1.0, aspect)
    X = X @ np.array([[math.cos(1.0), -math.sin(1.0)], [math.sin(1.0), math.cos(1.0)]])
    cs = DirectionalCoreset(CoresetMode.KERNEL, eps)
    chunks = np.array_split(rng.permutation(len(X)), 7)
    for i, chunk in enumerate(chunks):
        if i % 2:
            for p in X[chunk]:
                coreset_insert(cs, p)
        else:
            cs.insert_many(X[chunk])
        seen = X[np.concatenate(chunks[:i + 1])]
        ratio = _widths(cs.points(), N720) / _widths(seen, N720)
        assert ratio.min() >= 1 - eps / 3


def test_rotation_bound_sampled():
    rng = np.random.default_rng(7)
    for k in range(300):
        eps = (0.5, 0.1, 1.0)[k % 3]
        assert rotation_trial(rng, eps) <= 1 + eps / 3 + 1e-9


def test_fixed_direction_with_known_arm():
    # points on a V whose left arm runs along theta
    from test_vshape import random_vshape, sample_inside

    rng = np.random.default_rng(3)
    for _ in range(5):
        v = random_vshape(rng)
        P = sample_inside(v, rng, m=30)
        theta = math.atan2(v.dir_left[1], v.dir_left[0])
        got = solve_fixed_direction(P, theta, 0.3)
        assert contains_all(got, P, 1e-9)
        assert widths(got)[2] <= (1 + 0.1) * widths(v)[2] + 1e-9


def test_fixed_direction_thin_strip_and_huge_eps():
    rng = np.random.default_rng(1)
    P = np.c_[rng.random(40), 0.01 * rng.random(40)]
    v = solve_fixed_direction(P, 0.0, 0.2)
    assert contains_all(v, P, 1e-9)
    v = solve_fixed_direction(P, 0.4, 1e6)
    assert contains_all(v, P, 1e-9)


@pytest.mark.parametrize("kind, seed, P", small_instances(16, lo=5, hi=10, start=300),
                         ids=lambda x: str(x)[:12])
@pytest.mark.parametrize("eps", [0.5, 0.1])
def test_ptas_ratio_small(kind, seed, P, eps):
    rep = solve_ptas(P, eps)
    opt = brute_force_optimum(P).width
    assert contains_all(rep.best, P, 1e-9 * diam(P))
    assert rep.width <= (1 + eps) * opt + 1e-9
    assert rep.guarantee == pytest.approx(1 + eps)


@pytest.mark.parametrize("coreset", list(CoresetMode))
def test_ptas_against_exact_n200(coreset):
    P = gen_instance("uniform", {"n": 200}, 1)
    e = solve_exact(P)
    rep = solve_ptas(P, 0.1, coreset=coreset, start=None)
    assert contains_all(rep.best, P, 1e-9)
    assert rep.width <= 1.1 * e.width + 1e-9


def test_ptas_refed_exact_optimum():
    # start the search from the exact optimum itself: nothing wider may come back
    P = gen_instance("noisy_corner", {"n": 200}, 5)
    e = solve_exact(P)
    rep = solve_ptas(P, 0.1, start=e.best, anchor_mode="diametral")
    assert rep.width <= e.width * (1 + 1e-12)


def test_diametral_mode_on_200_seeds():
    fails = []
    for kind, seed, P in small_instances(200, lo=5, hi=12):
        rep = solve_ptas(P, 0.5, anchor_mode="diametral")
        if rep.width > 1.5 * brute_force_optimum(P).width + 1e-9:
            fails.append((kind, seed))
    assert len(fails) <= 10, fails


def test_ptas_rejects_bad_input():
    with pytest.raises(InvalidParameter):
        solve_ptas(gen_instance("uniform", {"n": 10}, 0), 0.0)
    with pytest.raises(InvalidParameter):
        solve_ptas([(0, 0), (1, 1), (2, 0)], 0.1)


def test_ptas_degenerate_zero_width():
    pts = [(0, 0), (1, 1), (2, 2), (3, 3), (-1, 1), (-2, 2), (-3, 3)]
    rep = solve_ptas(pts, 0.1)
    assert rep.width == pytest.approx(0.0, abs=1e-12) and contains_all(rep.best, pts)
