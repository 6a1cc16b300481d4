"""Exact minimum-width covering V-shape.

Every minimum-width V-shape can be taken canonical, and canonical shapes fall
into three families depending on which boundary rays carry two input points:
both outer rays, one inner and one outer, or both inner rays.  Each family has
its own search below; the driver keeps the overall minimum.

All searches run on a copy of the input scaled to a unit-diameter bounding box
so that the absolute tolerance TAU has a fixed meaning.
"""

from dataclasses import dataclass, field
import heapq
import math

import numpy as np

from .errors import (DegenerateBisector, EmptyInput, NoCandidate, NoValidVShape, ParallelInnerLines,
                     ParallelStrips)
from .geom import TAU, Halfplane, Similarity, Strip, angle_bisector, as_points, cross, dedupe, dot, \
    line_intersection, perp, sub, unit
from .hull import build_halfplane_index, convex_hull, extreme_point, insert_hull, min_width_strip
from .vshape import (CanonicalType, VShape, Wedge, _label, arm_mask, arm_strip, balance,
                     contains_all, contains_mask, is_canonical, strip_vshapes, strips_to_vshape, wedge_to_vshape, widths)

TAU_OPT = 1e-9


@dataclass
class SolveReport:
    best: VShape
    width: float
    canonical_type: CanonicalType = None
    candidates_examined: int = 0
    optima: list = None
    algorithm: str = "exact"
    balanced: bool = False
    degenerate: bool = False
    guarantee: float = 1.0
    stats: dict = field(default_factory=dict)


class _Tracker:
    """Running minimum over candidate V-shapes, optionally keeping every near-tie."""

    def __init__(self, P, keep_ties=False, bound=math.inf):
        self.P = P
        self.keep_ties = keep_ties
        self.best = None
        self.width = bound
        self.kind = None
        self.ties = {}
        self.examined = 0

    def ties_list(self):
        return [t[0] for t in self.ties.values() if t[1] <= self.width + TAU_OPT]

    def bound(self):
        return self.width + TAU_OPT if self.keep_ties else self.width

    def offer(self, v, w, kind, checked=False):
        self.examined += 1
        if w > self.bound():
            return False
        if not checked and not contains_all(v, self.P):
            return False
        if w < self.width - TAU_OPT or self.best is None:
            if self.keep_ties:
                self.ties = {k: t for k, t in self.ties.items() if t[1] <= w + TAU_OPT}
            self.best, self.width, self.kind = v, w, kind
        elif w < self.width:
            self.best, self.width, self.kind = v, w, kind
        if self.keep_ties:
            self.ties.setdefault(v.key(), (v, w, kind))
        return True


# ---------------------------------------------------------------------------
# both outer rays carry two points


def _ray_along(y, a, b, t, tol=TAU):
    """Direction (t or -t) of the ray from y containing segment ab, or None."""
    sa, sb = dot(t, sub(a, y)), dot(t, sub(b, y))
    if sa >= -tol and sb >= -tol:
        return t
    if sa <= tol and sb <= tol:
        return (-t[0], -t[1])
    return None


def solve_both_outer(pts, idx=None, tracker=None):
    """Both outer rays contain hull edges; the bisector at y splits the points."""
    P = as_points(pts)
    hull = convex_hull(P)
    if idx is None:
        idx = build_halfplane_index(P)
    tr = tracker or _Tracker(P)
    edges = hull.edges() if len(hull) >= 3 else []
    for i, (a1, b1) in enumerate(edges):
        t1 = unit(sub(b1, a1))
        n1 = perp(t1)  # inward for a counterclockwise hull
        c1 = dot(n1, a1)
        for j, (a2, b2) in enumerate(edges):
            if i == j:
                continue
            t2 = unit(sub(b2, a2))
            if abs(cross(t1, t2)) <= 1e-9:
                continue
            n2 = perp(t2)
            c2 = dot(n2, a2)
            y = line_intersection(n1, c1, n2, c2)
            r1 = _ray_along(y, a1, b1, t1)
            r2 = _ray_along(y, a2, b2, t2)
            if r1 is None or r2 is None:
                continue
            try:
                bis = angle_bisector(y, r1, r2)
            except DegenerateBisector:
                continue
            m = perp(bis.dir)
            s1 = 1.0 if dot(m, r1) > 0 else -1.0
            h1 = Halfplane((s1 * m[0], s1 * m[1]), s1 * dot(m, y))
            h2 = Halfplane((-s1 * m[0], -s1 * m[1]), -s1 * dot(m, y))
            f1 = idx.halfplane_extreme(h1, n1)
            f2 = idx.halfplane_extreme(h2, n2)
            w1, w2 = dot(n1, f1) - c1, dot(n2, f2) - c2
            w = max(w1, w2)
            tr.examined += 1
            if w > tr.bound():
                continue
            x = line_intersection(n1, c1 + w1, n2, c2 + w2)
            if x is None:
                continue
            v = _label(x, y, r1, r2)
            if v is None:
                continue
            tr.examined -= 1
            tr.offer(v, w, CanonicalType.BOTH_OUTER)
    return tr


# ---------------------------------------------------------------------------
# one inner ray and the other arm's outer ray carry two points each


def _edge_key(hullP, u, v):
    nl = perp(unit(sub(v, u)))
    far = extreme_point(hullP, nl)
    return dot(nl, far) - dot(nl, u), nl


def solve_inner_outer(pts, tracker=None):
    """Sweep away from every hull edge line, keeping a heap of candidate inner lines."""
    P = as_points(pts)
    hullP = convex_hull(P)
    tr = tracker or _Tracker(P)
    max_inserted = 0
    for a, b in (hullP.edges() if len(hullP) >= 3 else []):
        nl_out = perp(unit(sub(b, a)))
        c = dot(nl_out, a)
        dist = P @ np.asarray(nl_out) - c
        order = np.lexsort((P[:, 1], P[:, 0], -dist))
        first = [tuple(P[order[0]]), tuple(P[order[1]])]
        hq = convex_hull(first)
        heap = []
        alive = set()
        inserted = 0

        def push(u, v):
            nonlocal inserted
            key, nrm = _edge_key(hullP, u, v)
            heapq.heappush(heap, (key, u, v))
            alive.add((u, v))
            inserted += 1

        for u, v in hq.edges():
            push(u, v)
        for k in range(2, len(P)):
            q = order[k]
            t = max(float(dist[q]), 0.0)
            while heap and (heap[0][1], heap[0][2]) not in alive:
                heapq.heappop(heap)
            if heap and t <= tr.bound():
                popped = []
                while heap:
                    key, u, v = heapq.heappop(heap)
                    if (u, v) not in alive:
                        continue
                    popped.append((key, u, v))
                    key = max(key, 0.0)
                    w = max(t, key)
                    if w > tr.bound():
                        break
                    nrm = perp(unit(sub(v, u)))
                    sA = Strip(nl_out, c, c + t)
                    sB = Strip(nrm, dot(nrm, u), dot(nrm, u) + key)
                    tr.examined += 1
                    try:
                        cand = strips_to_vshape(sA, sB, P)
                    except (NoValidVShape, ParallelStrips):
                        continue
                    tr.examined -= 1
                    tr.offer(cand, w, CanonicalType.INNER_OUTER, checked=True)
                    if not tr.keep_ties:
                        break
                for item in popped:
                    heapq.heappush(heap, item)
            hq, delta = insert_hull(hq, tuple(P[q]))
            for e in delta.removed_edges:
                alive.discard(e)
            for u, v in delta.added_edges:
                push(u, v)
        max_inserted = max(max_inserted, inserted)
    tr.__dict__.setdefault("stats", {})["max_heap_insertions"] = max_inserted
    return tr


# ---------------------------------------------------------------------------
# both inner rays carry two points: empty wedges


def _left_strict(P, a, b, tol=TAU):
    d = sub(b, a)
    L = math.hypot(*d)
    return (d[0] * (P[:, 1] - a[1]) - d[1] * (P[:, 0] - a[0])) / L > tol


def enumerate_empty_wedges(pts, idx=None, tol=TAU):
    """All wedges W(a,b,c,d) with a,b,c,d input points and no input point in the notch.

    For each ordered pair (a, b) the points strictly left of a->b form Q.  A
    valid (c, d) is a hull edge of Q, traversed clockwise, with a and b
    strictly left of c->d.  Those edges form one contiguous chain of conv(Q)
    around the vertex of Q nearest the line ab, so the chain is walked both ways
    from there and each walk stops at its first failure.
    """
    P = as_points(pts)
    out = []
    n = len(P)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a, b = tuple(P[i]), tuple(P[j])
            mask = _left_strict(P, a, b, tol)
            if mask.sum() < 2:
                continue
            if idx is not None and idx.tier == 2:
                hp = Halfplane.left_of(a, b)
                hq = idx.region_hull(Halfplane(hp.normal, hp.offset + 2 * tol))
            else:
                hq = convex_hull(P[mask])
            verts = hq.vertices
            m = len(verts)
            if m < 2:
                continue
            dvals = [cross(sub(b, a), sub(v, a)) for v in verts]
            z = min(range(m), key=lambda k: (dvals[k], verts[k]))

            def good(k):
                # clockwise edge c->d runs from verts[k+1] to verts[k]
                u, v = verts[k % m], verts[(k + 1) % m]
                if u == v:
                    return None
                c, d = v, u
                dc = sub(d, c)
                L = math.hypot(*dc)
                if cross(dc, sub(a, c)) / L > tol and cross(dc, sub(b, c)) / L > tol:
                    return (c, d)
                return None

            edges = m if m >= 3 else 2
            seen = set()
            # edges k-1 (ending at z) and k (leaving z), walked outward
            for step in (-1, 1):
                k = z if step == 1 else z - 1
                for _ in range(edges):
                    if m == 2:
                        pair = [(verts[0], verts[1]), (verts[1], verts[0])][k % 2]
                        u, v = pair
                        dc = sub(u, v)
                        L = math.hypot(*dc)
                        e = (v, u) if (cross(dc, sub(a, v)) / L > tol and
                                       cross(dc, sub(b, v)) / L > tol) else None
                    else:
                        e = good(k)
                    if e is None:
                        break
                    if e not in seen:
                        seen.add(e)
                        out.append(Wedge(a, b, e[0], e[1]))
                    k += step
    return out


def _right_extent_matrix(P, H, rows):
    """R[i, j] = how far the hull H reaches strictly right of the directed line P[i]->P[j]."""
    A = P[rows]
    dx = P[None, :, 0] - A[:, None, 0]
    dy = P[None, :, 1] - A[:, None, 1]
    L = np.hypot(dx, dy)
    L[L == 0] = np.inf
    # right distance of hull vertex v: -cross(d, v - a)/|d|
    R = np.zeros((len(rows), len(P)))
    for v in H:
        vx = v[0] - A[:, 0:1]
        vy = v[1] - A[:, 1:2]
        np.maximum(R, -(dx * vy - dy * vx) / L, out=R)
    return R


def _arc_width_table(H):
    """width[s][k] = minimum width of the hull vertices s, s+1, ..., s+k-1 (cyclic)."""
    m = len(H)
    tab = np.full((m, m + 1), 0.0)
    for s in range(m):
        for k in range(3, m + 1):
            arc = [H[(s + t) % m] for t in range(k)]
            tab[s, k] = min_width_strip(convex_hull(arc)).width
    return tab


def solve_both_inner(pts, idx=None, tracker=None, tol=TAU):
    """Pair inner lines ab and cd whose notch is empty; both arms reach outward to the hull."""
    P = as_points(pts)
    hullP = convex_hull(P)
    tr = tracker or _Tracker(P)
    H = hullP.vertices
    Harr = hullP.array()
    n = len(P)
    arc = _arc_width_table(H) if len(H) >= 3 else None
    surv_i, surv_j, surv_R = [], [], []
    for r0 in range(0, n, 256):
        rows = np.arange(r0, min(n, r0 + 256))
        R = _right_extent_matrix(P, H, rows)
        R[np.arange(len(rows)), rows] = np.inf
        ok = R <= tr.bound()
        ok[np.arange(len(rows)), rows] = False
        if arc is not None and ok.any():
            ri, cj = np.nonzero(ok)
            a = P[rows[ri]]
            b = P[cj]
            d = b - a
            L = np.hypot(d[:, 0], d[:, 1])
            side = (d[:, 0:1] * (Harr[None, :, 1] - a[:, 1:2])
                    - d[:, 1:2] * (Harr[None, :, 0] - a[:, 0:1])) / L[:, None] > tol
            cnt = side.sum(axis=1)
            m = len(H)
            start = np.argmax(side & ~np.roll(side, 1, axis=1), axis=1)
            lb = np.where((cnt >= 3) & (cnt < m), arc[start, np.minimum(cnt, m)], 0.0)
            lb = np.where(cnt == m, np.inf, lb)
            good = lb <= tr.bound()
            ok[ri[~good], cj[~good]] = False
        ri, cj = np.nonzero(ok)
        surv_i.append(rows[ri])
        surv_j.append(cj)
        surv_R.append(R[ri, cj])
    I = np.concatenate(surv_i) if surv_i else np.zeros(0, int)
    J = np.concatenate(surv_j) if surv_j else np.zeros(0, int)
    RR = np.concatenate(surv_R) if surv_R else np.zeros(0)
    order = np.argsort(RR, kind="stable")
    I, J, RR = I[order], J[order], RR[order]
    wedges = 0
    chunk = max(16, min(4096, 4_000_000 // max(n, 1)))
    for c0 in range(0, len(I), chunk):
        sel = np.arange(c0, min(len(I), c0 + chunk))
        sel = sel[RR[sel] <= tr.bound()]
        if len(sel) == 0:
            break
        for k, c_, d_ in _walk_chains(P, I[sel], J[sel], tol, Harr, tr.bound()):
            wedges += 1
            rk = RR[sel[k]]
            a, b = P[I[sel[k]]], P[J[sel[k]]]
            c, d = P[c_], P[d_]
            dd = d - c
            rcd = float(np.max((dd[1] * (Harr[:, 0] - c[0]) - dd[0] * (Harr[:, 1] - c[1]))
                               / math.hypot(dd[0], dd[1])))
            if max(rk, rcd) > tr.bound():
                continue
            wdg = Wedge(tuple(a), tuple(b), tuple(c), tuple(d))
            try:
                v = wedge_to_vshape(wdg, hullP)
            except (NoValidVShape, ParallelInnerLines):
                tr.examined += 1
                continue
            tr.offer(v, widths(v)[2], CanonicalType.BOTH_INNER)
    tr.__dict__.setdefault("stats", {})["wedges"] = wedges
    return tr


def _partner_lower_bound(Harr, A, B, Z):
    """Smallest right extent any line separating segment ab from Q can have.

    Such a line keeps z (and every hull vertex inside Q) on its far side from a and b, so
    its normal m lies in the cone m.(z-a) >= 0, m.(z-b) >= 0 and its extent is at least
    h_P(m) - min over S of m.q, where S is z plus the hull vertices in Q. That function is
    piecewise sinusoidal; its breaks are normals of edges of conv(P) and conv(S), so the
    minimum over the cone sits at one of those or at a cone end.
    """
    E = np.roll(Harr, -1, axis=0) - Harr
    En = np.stack([E[:, 1], -E[:, 0]], axis=1)
    En /= np.hypot(En[:, 0], En[:, 1])[:, None]
    d = (A[:, None, 0] - Harr[None, :, 0]) * (B[:, None, 1] - Harr[None, :, 1]) \
        - (A[:, None, 1] - Harr[None, :, 1]) * (B[:, None, 0] - Harr[None, :, 0])
    inQ = d > 0                                   # hull vertices strictly left of a->b
    V = Harr[None, :, :] - Z[:, None, :]
    Vn = np.stack([-V[..., 1], V[..., 0]], axis=-1)
    Vn /= np.maximum(np.hypot(Vn[..., 0], Vn[..., 1]), 1e-300)[..., None]
    u1, u2 = Z - A, Z - B
    ends = []
    for u, other in ((u1, u2), (u2, u1)):
        m = np.stack([-u[:, 1], u[:, 0]], axis=1)
        m /= np.hypot(m[:, 0], m[:, 1])[:, None]
        ends.append(np.where(np.einsum("ij,ij->i", m, other)[:, None] >= 0, m, -m))
    k = len(A)
    M = np.concatenate([np.broadcast_to(En, (k,) + En.shape), np.broadcast_to(-En, (k,) + En.shape),
                        Vn, -Vn, ends[0][:, None, :], ends[1][:, None, :]], axis=1)
    eps = 1e-12
    inside = (np.einsum("rmk,rk->rm", M, u1) >= -eps) & (np.einsum("rmk,rk->rm", M, u2) >= -eps)
    proj = np.einsum("rmk,hk->rmh", M, Harr)
    hP = proj.max(axis=2)
    lowS = np.minimum(np.where(inQ[:, None, :], proj, np.inf).min(axis=2), np.einsum("rmk,rk->rm", M, Z))
    return np.where(inside, hP - lowS, np.inf).min(axis=1)


def _walk_chains(P, I, J, tol, Harr=None, bound=math.inf):
    """Yield (row, c, d) for every edge cd of conv(Q(a,b)) separating segment ab from Q.

    All rows are handled together. Each gift-wrapping step is one masked argmin over the
    point set, starting from the point of Q nearest to line ab and moving both ways.
    """
    A, B = P[I], P[J]
    D = B - A
    L = np.hypot(D[:, 0], D[:, 1])
    U = D / L[:, None]
    N = np.stack([-U[:, 1], U[:, 0]], axis=1)
    dist = N @ P.T
    dist -= np.einsum("ij,ij->i", N, A)[:, None]
    inQ = dist > tol
    dist[~inQ] = np.inf
    z = np.argmin(dist, axis=1)
    rows = np.nonzero(np.isfinite(dist[np.arange(len(z)), z]))[0]
    z = z[rows]
    if len(rows) == 0:
        return
    if Harr is not None and len(Harr) >= 3:
        keep = _partner_lower_bound(Harr, A[rows], B[rows], P[z]) <= bound + tol
        rows, z = rows[keep], z[keep]
        if len(rows) == 0:
            return
    for ccw in (True, False):
        act = rows.copy()
        cur = z.copy()
        ref = U[act] if ccw else -U[act]
        steps = 0
        while len(act) and steps < len(P):
            steps += 1
            # coordinates of every point in the frame (ref, ref rotated by +-90 degrees)
            nrm = np.stack([-ref[:, 1], ref[:, 0]], axis=1) if ccw else np.stack([ref[:, 1], -ref[:, 0]], axis=1)
            pc = P[cur]
            x = ref @ P.T - np.einsum("ij,ij->i", ref, pc)[:, None]
            y = nrm @ P.T - np.einsum("ij,ij->i", nrm, pc)[:, None]
            r2 = x * x + y * y
            r = np.sqrt(r2)
            # convex chain: every turn is in [0, pi), so the smallest turn has the largest cosine
            key = -x / np.where(r > 0, r, 1.0) - 1e-10 * r
            key = np.where(inQ[act] & (r2 > tol * tol) & (y >= -tol), key, np.inf)
            nxt = np.argmin(key, axis=1)
            c_, d_ = (nxt, cur) if ccw else (cur, nxt)
            e = P[d_] - P[c_]
            el = np.hypot(e[:, 0], e[:, 1])
            el = np.where(el > 0, el, 1.0)
            sa = (e[:, 0] * (A[act, 1] - P[c_, 1]) - e[:, 1] * (A[act, 0] - P[c_, 0])) / el
            sb = (e[:, 0] * (B[act, 1] - P[c_, 1]) - e[:, 1] * (B[act, 0] - P[c_, 0])) / el
            good = (sa > tol) & (sb > tol) & (nxt != z[np.searchsorted(rows, act)]) \
                & np.isfinite(key[np.arange(len(act)), nxt])
            for k, c, d in zip(act[good], c_[good], d_[good]):
                yield int(k), int(c), int(d)
            step = P[nxt[good]] - P[cur[good]]
            ref = step / np.hypot(step[:, 0], step[:, 1])[:, None]
            act, cur = act[good], nxt[good]


# ---------------------------------------------------------------------------
# small and degenerate inputs


def _collinear_vshape(P):
    """Zero-width V-shape along the line of collinear points (or a single point)."""
    if len(P) == 1:
        a = tuple(P[0])
        return VShape(a, a, (1.0, 0.0), (-1.0, 0.0))
    proj = P @ (P[1] - P[0])
    start = tuple(P[int(np.argmin(proj))])
    dd = unit(sub(tuple(P[int(np.argmax(proj))]), start))
    return VShape(start, start, dd, perp(dd))


def _small_search(P, tr):
    """Every bipartition of a tiny set; each side gets its narrowest strip or a pair line."""
    n = len(P)
    dirs = []
    for k in range(n):
        for l in range(k + 1, n):
            dirs.append(perp(unit(sub(tuple(P[l]), tuple(P[k])))))
    for mask in range(1 << (n - 1)):
        sides = [P[[i for i in range(n) if (mask >> i) & 1]], P[[i for i in range(n) if not (mask >> i) & 1]]]
        if len(sides[0]) == 0:
            sides[0] = sides[1][:1]
        strips = []
        for S in sides:
            opts = [min_width_strip(convex_hull(S))]
            for nn in dirs:
                pr = S @ np.asarray(nn)
                if np.ptp(pr) <= TAU:
                    opts.append(Strip(nn, float(pr.min()), float(pr.max())))
            strips.append(opts)
        for s1 in strips[0]:
            for s2 in strips[1]:
                try:
                    v = strips_to_vshape(s1, s2, P)
                except (NoValidVShape, ParallelStrips):
                    continue
                tr.offer(v, max(s1.width, s2.width), CanonicalType.BOTH_OUTER, checked=True)
    return tr


# ---------------------------------------------------------------------------


def _prefer_canonical(cands, P):
    for v in cands:
        if is_canonical(v, P)[0]:
            return v
    return cands[0]


def _refit_slack_arm(v, P, w):
    """Tighten the non-binding arm of an optimum until it is canonical.

    The wider arm fixes the width; the other arm may have slack and then fails
    the canonical test although an equally wide canonical optimum exists.  Keep
    one arm's strip and replace the other by the calipers strip of the points
    the kept arm misses.  Points that then fall behind the new apex are added
    to that set and the strip is refitted.  The first rebuilt V-shape that is
    canonical, covers P and is no wider wins.
    """
    for keep in (v.dir_right, v.dir_left):
        kept = arm_strip(v, keep)
        take = ~arm_mask(v, keep, P, TAU)
        while take.any():
            # points behind the new apex join the refitted arm; the set only grows
            s2 = min_width_strip(convex_hull(P[take]))
            if abs(cross(kept.normal, s2.normal)) <= TAU or s2.width > w + TAU_OPT:
                break
            miss = None
            for u in strip_vshapes(kept, s2):
                m = contains_mask(u, P, TAU)
                if m.all():
                    if widths(u)[2] <= w + TAU_OPT and is_canonical(u, P)[0]:
                        return u
                elif miss is None or (~m).sum() < (~miss).sum():
                    miss = m
            if miss is None or not (take | ~miss).sum() > take.sum():
                break
            take |= ~miss
    return None


def solve_exact(pts, balanced=False, enumerate_optima=False, index_tier=1, threads=None):
    """Minimum-width covering V-shape.

    Inputs are deduplicated and rescaled to a unit-diameter box; the result is
    mapped back.  ``threads`` is accepted for interface symmetry with the
    other solvers; the searches here are vectorized instead.
    """
    P0 = dedupe(pts)
    if len(P0) == 0:
        raise EmptyInput("no points")
    sim = Similarity.fit(P0)
    P = sim.forward(P0)
    hull = convex_hull(P)
    if len(P) <= 2 or len(hull) <= 2:
        v = _collinear_vshape(P)
        rep = SolveReport(v.mapped(sim), 0.0, None, 1, [v.mapped(sim)] if enumerate_optima else None,
                          degenerate=True, balanced=balanced)
        return rep
    tr = _Tracker(P, keep_ties=True)
    stats = {}
    if len(P) < 5:
        _small_search(P, tr)
    else:
        idx = build_halfplane_index(P, tier=index_tier)
        solve_both_outer(P, idx, tr)
        solve_inner_outer(P, tr)
        solve_both_inner(P, idx, tr)
        stats.update(getattr(tr, "stats", {}))
    if tr.best is None:
        raise NoCandidate("no covering V-shape found")
    ties = sorted(tr.ties_list(), key=lambda v: v.key())
    best = _prefer_canonical(ties, P) if ties else tr.best
    optima = None
    if enumerate_optima:
        canon = [v for v in ties if is_canonical(v, P)[0]]
        optima = canon or ties
    ok, kind = is_canonical(best, P)
    if not ok:
        for cand in [best] + sorted(tr.ties_list(), key=lambda v: v.key()):
            u = _refit_slack_arm(cand, P, tr.width)
            if u is not None:
                best = u
                ok, kind = is_canonical(best, P)
                break
    if balanced:
        best = balance(best)
    w = widths(best)[2]
    rep = SolveReport(best.mapped(sim), sim.length_back(w), kind if ok else tr.kind, tr.examined,
                      [v.mapped(sim) for v in optima] if optima is not None else None,
                      balanced=balanced, degenerate=w <= TAU, stats=stats)
    return rep
