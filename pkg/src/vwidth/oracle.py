"""Brute-force ground truth for small instances.

Two independent oracles live here.  The combinatorial one enumerates every
strip spanned by a point pair plus a third point (and every zero-width pair
line), then every pair of such strips, and keeps the narrowest pair that forms
a covering V-shape.  The grid oracle instead sweeps arm directions on a 0.1
degree grid.  They share nothing but the V-shape model.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import EmptyInput, NoValidVShape, ParallelStrips, TooLarge
from .geom import TAU, Similarity, Strip, dedupe
from .vshape import VShape, _label, contains_all, is_canonical, strips_to_vshape

TAU_OPT = 1e-9
MAX_N = 12


@dataclass
class OracleResult:
    """Best canonical width plus the limit reachable by near-parallel arms.

    ``parallel_limit`` is the narrowest cover by two parallel strips.  V-shapes
    with nearly parallel arms and a far-away apex approach it without reaching
    it, so ``infimum = min(width, parallel_limit)`` is the true lower envelope
    of all covering V-shapes while ``width`` is attained by ``witnesses``.
    """

    width: float
    witnesses: list = field(default_factory=list)
    parallel_limit: float = math.inf

    @property
    def infimum(self):
        return min(self.width, self.parallel_limit)


def parallel_strip_limit(P):
    """Narrowest pair of parallel strips covering P (``P`` already normalized).

    Inside each angular interval between consecutive pair directions the sorted
    order is fixed, every split into a lower and an upper group has a fixed
    pair of extreme points, and each group's width is a sinusoid in the angle.
    The max of two such sinusoids is minimized at an interval end or where the
    two widths cross, so those angles are all that need checking.
    """
    n = len(P)
    if n <= 2:
        return 0.0
    cuts = {0.0, math.pi}
    for i in range(n):
        for j in range(i + 1, n):
            d = P[j] - P[i]
            cuts.add((math.atan2(d[1], d[0]) + 0.5 * math.pi) % math.pi)
    cuts = sorted(cuts)
    best = math.inf
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a <= 0:
            continue
        mid = 0.5 * (a + b)
        order = np.argsort(P @ np.array([math.cos(mid), math.sin(mid)]))
        thetas = [a, b]
        for k in range(1, n):
            lo_a, hi_a = P[order[0]], P[order[k - 1]]
            lo_b, hi_b = P[order[k]], P[order[-1]]
            va, vb = hi_a - lo_a, hi_b - lo_b
            # widths are <n(t), va> and <n(t), vb>; they cross where <n(t), va - vb> = 0
            dv = va - vb
            if np.any(dv != 0):
                t = (math.atan2(dv[1], dv[0]) + 0.5 * math.pi) % math.pi
                if a < t < b:
                    thetas.append(t)
        for t in thetas:
            nv = np.array([math.cos(t), math.sin(t)])
            proj = np.sort(P @ nv)
            spreads = np.maximum(proj[:-1] - proj[0], proj[-1] - proj[1:])
            best = min(best, float(spreads.min()))
    return best


def candidate_strips(P, tol=TAU):
    """All strips flush with two points on one side and one point on the other.

    Returns ``(normals (s,2), lo (s,), hi (s,))`` with canonical normals and
    duplicates removed.  Zero-width strips along every pair line are included.
    """
    n = len(P)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            d = P[j] - P[i]
            L = math.hypot(d[0], d[1])
            nrm = np.array([-d[1], d[0]]) / L
            if nrm[1] < 0 or (nrm[1] == 0 and nrm[0] < 0):
                nrm = -nrm
            c = float(nrm @ P[i])
            proj = P @ nrm - c
            rows.append((nrm[0], nrm[1], c, c))
            for k in range(n):
                if k == i or k == j or abs(proj[k]) <= tol:
                    continue
                lo, hi = min(0.0, proj[k]), max(0.0, proj[k])
                rows.append((nrm[0], nrm[1], c + lo, c + hi))
    arr = np.unique(np.round(np.asarray(rows), 12), axis=0)
    # re-normalize after rounding so normals stay unit length
    N = arr[:, :2] / np.hypot(arr[:, 0], arr[:, 1])[:, None]
    return N, arr[:, 2], arr[:, 3]


def _membership(P, N, lo, hi, tol):
    proj = N @ P.T
    return (proj >= lo[:, None] - tol) & (proj <= hi[:, None] + tol)


def _corner(n1, c1, n2, c2):
    det = n1[:, 0] * n2[:, 1] - n1[:, 1] * n2[:, 0]
    x = (c1 * n2[:, 1] - c2 * n1[:, 1]) / det
    y = (n1[:, 0] * c2 - n2[:, 0] * c1) / det
    return np.stack([x, y], axis=1)


def _pairs(N, lo, hi, M, tol):
    """Index pairs (i, j), i < j, of non-parallel strips whose union covers every point."""
    s = len(N)
    out_i, out_j = [], []
    for i in range(s - 1):
        j = np.arange(i + 1, s)
        cover = (M[i][None, :] | M[j]).all(axis=1)
        par = np.abs(N[i, 0] * N[j, 1] - N[i, 1] * N[j, 0]) <= tol
        keep = j[cover & ~par]
        out_i.append(np.full(len(keep), i))
        out_j.append(keep)
    if not out_i:
        return np.zeros(0, int), np.zeros(0, int)
    return np.concatenate(out_i), np.concatenate(out_j)


def _vector_check(P, N, lo, hi, M, I, J, tol):
    """Which of the four (diagonal, side) configurations cover P, per pair."""
    n1, n2 = N[I], N[J]
    res = []
    for a1, b1, a2, b2 in ((lo[I], lo[J], hi[I], hi[J]), (lo[I], hi[J], hi[I], lo[J])):
        p = _corner(n1, a1, n2, b1)
        q = _corner(n1, a2, n2, b2)
        u = q - p
        L = np.hypot(u[:, 0], u[:, 1])
        rel_x = P[None, :, 0] - p[:, 0:1]
        rel_y = P[None, :, 1] - p[:, 1:2]
        s = (u[:, 0:1] * rel_y - u[:, 1:2] * rel_x) / L[:, None]
        in1, in2 = M[I], M[J]
        on = np.abs(s) <= tol
        both = in1 | in2
        for sg in (1.0, -1.0):
            pos, neg = sg * s > tol, sg * s < -tol
            ok = (~pos | in1) & (~neg | in2) & (~on | both)
            res.append((p, q, sg, ok.all(axis=1)))
    return res


def _build(p, q, sg, n1, n2):
    u = (q[0] - p[0], q[1] - p[1])
    ax1 = (n1[1], -n1[0])
    ax2 = (n2[1], -n2[0])
    c1 = u[0] * ax1[1] - u[1] * ax1[0]
    d1 = ax1 if sg * c1 > 0 else (-ax1[0], -ax1[1])
    c2 = u[0] * ax2[1] - u[1] * ax2[0]
    d2 = ax2 if sg * c2 < 0 else (-ax2[0], -ax2[1])
    return _label(tuple(p), tuple(q), d1, d2)


def _strip(N, lo, hi, k):
    return Strip((float(N[k, 0]), float(N[k, 1])), float(lo[k]), float(hi[k]))


def brute_force_optimum(pts, override=False, tol=TAU):
    """Minimum-width covering V-shape by exhaustive enumeration of canonical strip pairs."""
    P0 = dedupe(pts)
    if len(P0) == 0:
        raise EmptyInput("no points")
    if len(P0) > MAX_N and not override:
        raise TooLarge(f"oracle is limited to {MAX_N} points (got {len(P0)})")
    sim = Similarity.fit(P0)
    P = sim.forward(P0)
    if len(P) <= 2:
        a = tuple(P[0])
        b = tuple(P[-1]) if len(P) == 2 else (a[0] + 1.0, a[1])
        d = (b[0] - a[0], b[1] - a[1])
        L = math.hypot(*d)
        d = (d[0] / L, d[1] / L)
        v = VShape(a, a, d, (-d[1], d[0]))
        return OracleResult(0.0, [v.mapped(sim)])
    N, lo, hi = candidate_strips(P, tol)
    M = _membership(P, N, lo, hi, tol)
    W = hi - lo
    I, J = _pairs(N, lo, hi, M, tol)
    width = np.maximum(W[I], W[J])
    order = np.argsort(width, kind="stable")
    I, J, width = I[order], J[order], width[order]
    degenerate = (W[I] <= tol) | (W[J] <= tol)
    found = []
    best = math.inf
    chunk = 4096
    for start in range(0, len(I), chunk):
        if width[start] > best + TAU_OPT:
            break
        sl = slice(start, start + chunk)
        Ic, Jc, wc, dg = I[sl], J[sl], width[sl], degenerate[sl]
        nd = ~dg
        if nd.any():
            for p, q, sg, ok in _vector_check(P, N, lo, hi, M, Ic[nd], Jc[nd], tol):
                for k in np.nonzero(ok)[0]:
                    w = wc[nd][k]
                    if w > best + TAU_OPT:
                        continue
                    i, j = Ic[nd][k], Jc[nd][k]
                    v = _build(p[k], q[k], sg, N[i], N[j])
                    if v is not None and contains_all(v, P, tol):
                        found.append((w, v))
                        best = min(best, w)
        for k in np.nonzero(dg)[0]:
            w = wc[k]
            if w > best + TAU_OPT:
                continue
            try:
                v = strips_to_vshape(_strip(N, lo, hi, Ic[k]), _strip(N, lo, hi, Jc[k]), P, tol)
            except (NoValidVShape, ParallelStrips):
                continue
            found.append((w, v))
            best = min(best, w)
    if not found:
        raise NoValidVShape("no covering V-shape among canonical candidates")
    wit = {}
    for w, v in found:
        if w <= best + TAU_OPT:
            wit.setdefault(v.key(), v)
    witnesses = sorted(wit.values(), key=lambda v: (not is_canonical(v, P)[0], v.key()))
    return OracleResult(sim.length_back(best), [v.mapped(sim) for v in witnesses],
                        sim.length_back(parallel_strip_limit(P)))


def brute_force_two_strip(pts, override=False, tol=TAU):
    """Width of the narrowest pair of congruent strips whose union covers the points."""
    P0 = dedupe(pts)
    if len(P0) == 0:
        raise EmptyInput("no points")
    if len(P0) > 10 and not override:
        raise TooLarge("two-strip oracle is limited to 10 points")
    if len(P0) <= 2:
        return 0.0
    sim = Similarity.fit(P0)
    P = sim.forward(P0)
    N, lo, hi = candidate_strips(P, tol)
    M = _membership(P, N, lo, hi, tol)
    W = hi - lo
    best = math.inf
    for i in range(len(N)):
        cover = (M[i][None, :] | M).all(axis=1)
        if cover.any():
            best = min(best, float(np.maximum(W[i], W[cover]).min()))
    return sim.length_back(best)


def _grid_normals(step_deg):
    t = np.deg2rad(np.arange(0.0, 180.0, step_deg))
    return np.stack([np.cos(t), np.sin(t)], axis=1)


def grid_search_optimum(pts, step_deg=0.1, tol=1e-9):
    """Second, independent oracle: arm directions on a fixed angular grid.

    For every grid normal the points are sorted by projection; each contiguous
    window is a candidate point set for the first strip, the rest goes to the
    second strip, whose narrowest grid direction is found by a vectorized scan.
    Strip offsets are tight to their point sets.  A pair only counts when the
    two strips form a V-shape covering everything.
    """
    P0 = dedupe(pts)
    if len(P0) < 3:
        return 0.0
    sim = Similarity.fit(P0)
    P = sim.forward(P0)
    n = len(P)
    G = _grid_normals(step_deg)
    proj = G @ P.T  # (g, n)
    parts = {}
    for gi in range(len(G)):
        order = np.argsort(proj[gi])
        for a in range(n):
            mask = 0
            for b in range(a, n):
                mask |= 1 << int(order[b])
                if b - a + 1 < n:
                    parts.setdefault(mask, None)
    bits = np.array([[(m >> k) & 1 for k in range(n)] for m in parts], dtype=bool)

    def grid_widths(sel):
        # widths of each point subset over all grid normals; rows of sel are subsets
        big = np.where(sel[:, None, :], proj[None, :, :], -np.inf).max(axis=2)
        small = np.where(sel[:, None, :], proj[None, :, :], np.inf).min(axis=2)
        return big - small

    W1 = grid_widths(bits)
    W2 = grid_widths(~bits)
    lb = np.maximum(W1.min(axis=1), W2.min(axis=1))
    best = math.inf
    for r in np.argsort(lb):
        if lb[r] >= best:
            break
        sel1, sel2 = bits[r], ~bits[r]
        g1 = np.nonzero(W1[r] < best)[0]
        g2 = np.nonzero(W2[r] < best)[0]
        if len(g1) == 0 or len(g2) == 0:
            continue
        A, B = np.meshgrid(g1, g2, indexing="ij")
        A, B = A.ravel(), B.ravel()
        w = np.maximum(W1[r][A], W2[r][B])
        keep = w < best
        A, B, w = A[keep], B[keep], w[keep]
        o = np.argsort(w)
        A, B, w = A[o], B[o], w[o]
        for s0 in range(0, len(A), 20000):
            sa, sb = A[s0:s0 + 20000], B[s0:s0 + 20000]
            Nn = np.concatenate([G[sa], G[sb]])
            lo1 = np.where(sel1, proj[sa], np.inf).min(axis=1)
            hi1 = np.where(sel1, proj[sa], -np.inf).max(axis=1)
            lo2 = np.where(sel2, proj[sb], np.inf).min(axis=1)
            hi2 = np.where(sel2, proj[sb], -np.inf).max(axis=1)
            lo_all = np.concatenate([lo1, lo2])
            hi_all = np.concatenate([hi1, hi2])
            Mall = _membership(P, Nn, lo_all, hi_all, tol)
            m = len(sa)
            par = np.abs(G[sa, 0] * G[sb, 1] - G[sa, 1] * G[sb, 0]) <= 1e-12
            I = np.arange(m)[~par]
            J = I + m
            if len(I) == 0:
                continue
            good = np.zeros(len(I), dtype=bool)
            degen = ((hi_all - lo_all)[I] <= tol) | ((hi_all - lo_all)[J] <= tol)
            for _, _, _, ok in _vector_check(P, Nn, lo_all, hi_all, Mall, I, J, tol):
                good |= ok & ~degen
            hit = np.nonzero(good)[0]
            if len(hit):
                best = min(best, float(w[s0:s0 + 20000][~par][hit[0]]))
                break
    return sim.length_back(best)
