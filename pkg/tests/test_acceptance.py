"""The eight acceptance criteria, one test each.

Every test prints a single ``CRITERION n: PASS|FAIL`` line (visible even
under output capture) and then asserts, so a failure stays red.
"""

from functools import lru_cache
import math
import time

import numpy as np
import pytest

from vwidth import (AnchorMode, CoresetMode, PlugMode, approx_vshape, brute_force_optimum,
                    contains_all, gen_instance, solve_exact, solve_ptas)
from vwidth.oracle import brute_force_two_strip, grid_search_optimum
from vwidth.vshape import is_canonical, widths

from conftest import diam, rotation_trial

pytestmark = pytest.mark.acceptance


def instance(seed, lo=5, hi=12):
    n = lo + seed % (hi - lo + 1)
    if seed % 2 == 0:
        return gen_instance("uniform", {"n": n}, seed)
    return gen_instance("noisy_corner", {"n": n, "sigma": 0.05}, seed)


@lru_cache(maxsize=None)
def oracle(seed, lo=5, hi=12):
    return brute_force_optimum(instance(seed, lo, hi))


SMALL = range(1000, 1060)  # n in 5..10 for the criteria that run every solver


def report(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}")


def test_c1_exact_matches_oracle(capsys):
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for seed in range(200):
        P = instance(seed)
        got = solve_exact(P).width
        err = abs(got - oracle(seed).width) / diam(P)
        worst = max(worst, err)
        if err > 1e-6:
            bad.append(seed)
    secs = time.perf_counter() - t0
    ok = not bad and secs < 120
    report(capsys, 1, ok, f"200 instances, worst error {worst:.2e} x diam, {secs:.1f} s, failing seeds {bad}")
    assert ok


def test_c2_two_oracles_agree(capsys):
    fixtures = [instance(s, 5, 8) for s in range(2000, 2018)]
    fixtures.append(np.array([(0, 0), (1, 0), (0, 1), (1, 1), (0.5, 0.5)], float))
    fixtures.append(np.array([(0, 0), (1, 0.1), (2, 0), (0, 1), (0, 2)], float))
    worst = 0.0
    for P in fixtures:
        r = brute_force_optimum(P)
        # both oracles normalize to unit bbox diagonal; compare in that frame
        scale = float(np.linalg.norm(np.ptp(P, axis=0)))
        worst = max(worst, abs(grid_search_optimum(P) - r.infimum) / scale)
    ok = worst <= 2e-3
    report(capsys, 2, ok, f"{len(fixtures)} fixtures, worst normalized gap {worst:.2e}")
    assert ok


def test_c3_approximation_ratios(capsys):
    worst = {"approx": 0.0, 0.5: 0.0, 0.1: 0.0}
    bad = []
    for seed in SMALL:
        P = instance(seed, 5, 10)
        w = oracle(seed, 5, 10).width
        v, _ = approx_vshape(P, PlugMode.EXACT_SMALL)
        a = widths(v)[2]
        worst["approx"] = max(worst["approx"], a / w if w > 0 else 0.0)
        if a > 3.0 * w + 1e-9:
            bad.append(("approx", seed))
        for eps in (0.5, 0.1):
            p = solve_ptas(P, eps, anchor_mode=AnchorMode.ALL_PAIRS, coreset=CoresetMode.EXACT).width
            worst[eps] = max(worst[eps], p / w if w > 0 else 0.0)
            if p > (1 + eps) * w + 1e-9:
                bad.append((eps, seed))
    ok = not bad
    report(capsys, 3, ok, f"{len(SMALL)} instances, worst ratios approx {worst['approx']:.3f} "
           f"ptas(0.5) {worst[0.5]:.4f} ptas(0.1) {worst[0.1]:.4f}, violations {bad}")
    assert ok


def test_c4_two_strip_below_v_width(capsys):
    bad, gap = [], math.inf
    for seed in SMALL:
        P = instance(seed, 5, 10)
        t, e = brute_force_two_strip(P), solve_exact(P).width
        gap = min(gap, e - t)
        if t > e + 1e-9:
            bad.append(seed)
    ok = not bad
    report(capsys, 4, ok, f"{len(SMALL)} instances, smallest margin {gap:.2e}, violations {bad}")
    assert ok


def test_c5_kgon_optima_grow_quadratically(capsys):
    ks = [4, 6, 8]
    counts = [len(solve_exact(gen_instance("two_kgon", {"k": k}), enumerate_optima=True).optima)
              for k in ks]
    slope = float(np.polyfit(np.log(ks), np.log(counts), 1)[0])
    more = {k: len(solve_exact(gen_instance("two_kgon", {"k": k}), enumerate_optima=True).optima)
            for k in (10, 12, 16)}
    ok = 1.6 <= slope <= 2.4
    report(capsys, 5, ok, f"counts {dict(zip(ks, counts))}, fitted exponent {slope:.2f}; "
           f"larger k for reference {more}")
    assert ok


def test_c6_rotation_lemma(capsys):
    rng = np.random.default_rng(6)
    worst = -math.inf
    per_eps = 250
    for eps in (1.0, 0.5, 0.1, 0.01):
        for _ in range(per_eps):
            worst = max(worst, rotation_trial(rng, eps) - (1 + eps / 3))
    ok = worst <= 1e-9
    report(capsys, 6, ok, f"{4 * per_eps} configurations, max excess over 1+eps/3: {worst:.2e}")
    assert ok


def test_c7_scaling(capsys):
    P = gen_instance("uniform", {"n": 2000}, 0)
    t0 = time.perf_counter()
    ex = solve_exact(P)
    t_exact = time.perf_counter() - t0
    Q = gen_instance("noisy_corner", {"n": 100_000}, 0)
    t0 = time.perf_counter()
    pt = solve_ptas(Q, 0.1, anchor_mode=AnchorMode.DIAMETRAL, coreset=CoresetMode.EXACT)
    t_ptas = time.perf_counter() - t0
    a = widths(approx_vshape(Q, PlugMode.HEURISTIC)[0])[2]
    ok = t_exact < 60 and t_ptas < 60 and pt.width <= a + 1e-12 and contains_all(ex.best, P, 1e-9)
    report(capsys, 7, ok, f"exact n=2000 {t_exact:.1f} s; ptas n=100000 {t_ptas:.1f} s, "
           f"width {pt.width:.6g} vs approx {a:.6g}")
    assert ok


def test_c8_coverage_and_canonicality(capsys):
    fails = []
    count = 0
    sets = [("small", s, instance(s, 5, 10)) for s in SMALL]
    sets += [(k, s, gen_instance(k, {"n": n}, s)) for k in ("uniform", "noisy_corner")
             for s, n in ((1, 50), (2, 200), (3, 500))]
    for tag, seed, P in sets:
        tol = 1e-9 * max(1.0, float(np.abs(P).max()))
        ex = solve_exact(P)
        outs = {"exact": ex.best, "approx": approx_vshape(P, PlugMode.EXACT_SMALL if len(P) <= 40
                                                          else PlugMode.HEURISTIC)[0],
                "ptas": solve_ptas(P, 0.5, anchor_mode=AnchorMode.DIAMETRAL).best,
                "balanced": solve_exact(P, balanced=True).best}
        for name, v in outs.items():
            count += 1
            if not contains_all(v, P, tol):
                fails.append((tag, seed, name, "cover"))
        if not is_canonical(ex.best, P)[0]:
            fails.append((tag, seed, "exact", "canonical"))
    ok = not fails
    report(capsys, 8, ok, f"{count} solver outputs on {len(sets)} inputs, failures {fails}")
    assert ok
