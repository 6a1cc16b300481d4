import numpy as np
import pytest

from vwidth.generate import gen_instance, rng_for


def small_instances(count=40, lo=5, hi=10, start=0):
    """Seeded small instances alternating uniform and noisy_corner."""
    out = []
    for seed in range(start, start + count):
        n = lo + seed % (hi - lo + 1)
        kind = "uniform" if seed % 2 == 0 else "noisy_corner"
        params = {"n": n} if kind == "uniform" else {"n": n, "sigma": 0.05}
        out.append((kind, seed, gen_instance(kind, params, seed)))
    return out


def diam(P):
    P = np.asarray(P)
    return float(np.sqrt(((P[:, None] - P[None]) ** 2).sum(-1)).max())


@pytest.fixture
def rng():
    return rng_for(12345)


def clip_halfplane(poly, n, c):
    """Part of convex polygon ``poly`` with <n, p> >= c."""
    out = []
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        fa, fb = np.dot(n, a) - c, np.dot(n, b) - c
        if fa >= 0:
            out.append(a)
        if fa * fb < 0:
            out.append(a + (b - a) * (fa / (fa - fb)))
    return out


def arm_halfplanes(v, d):
    """The arm segment(x,y) + ray(d) as three halfplanes (n, c) with <n,p> >= c."""
    x, y, d = np.asarray(v.x), np.asarray(v.y), np.asarray(d)
    m = np.array([-d[1], d[0]])
    lo, hi = sorted((m @ x, m @ y))
    planes = [(m, lo), (-m, -hi)]
    u = y - x
    back = np.array([-u[1], u[0]])
    if np.hypot(*back) > 1e-15:
        if back @ d < 0:
            back = -back
        planes.append((back, back @ x))
    return planes


def rotation_trial(rng, eps, n=40):
    """One sampled configuration for the strip-rotation bound.

    Draws a V-shape, points inside it, an anchor pair among the points of the
    first arm's strip and an angle alpha <= beta.  Returns the width of the
    narrowest strip in the rotated direction holding B cut with V, divided by
    width(V), where B is the bounding box of the strip's points inside that
    strip.
    """
    from test_vshape import random_vshape, sample_inside
    from vwidth.vshape import widths

    v = random_vshape(rng)
    P = sample_inside(v, rng, m=n // 2, reach=rng.uniform(0.5, 4.0))
    w = widths(v)[2]
    d = np.asarray(v.dir_left)
    m = np.array([-d[1], d[0]])
    lo, hi = sorted((m @ np.asarray(v.x), m @ np.asarray(v.y)))
    pm = P @ m
    S = P[(pm >= lo - 1e-12) & (pm <= hi + 1e-12)]
    along = S @ d
    B = [a * d + b * m for a, b in ((along.min(), lo), (along.max(), lo), (along.max(), hi),
                                    (along.min(), hi))]
    # anchor pair: any pair at least half the diameter of S apart
    D = np.sqrt(((S[:, None] - S[None]) ** 2).sum(-1))
    i, j = np.nonzero(D >= D.max() / 2)
    k = rng.integers(len(i))
    dpq = D[i[k], j[k]]
    beta = np.arcsin(min(eps * w / (6 * dpq), 1.0))
    alpha = rng.uniform(0, beta) * rng.choice([-1.0, 1.0])
    verts = []
    for arm in (v.dir_left, v.dir_right):
        poly = [np.asarray(p, float) for p in B]
        for nn, c in arm_halfplanes(v, arm):
            poly = clip_halfplane(poly, nn, c - 1e-12)
            if not poly:
                break
        verts += poly
    ca, sa = np.cos(alpha), np.sin(alpha)
    m2 = np.array([ca * m[0] - sa * m[1], sa * m[0] + ca * m[1]])
    proj = np.asarray(verts) @ m2
    return float(proj.max() - proj.min()) / w
