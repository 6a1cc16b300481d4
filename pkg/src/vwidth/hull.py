"""Convex hulls, extreme-point queries, calipers and halfplane-extreme indexes."""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import EmptyInput, EmptyRegion, HullsInterpenetrate, NoFeasibleDirection
from .geom import TAU, Halfplane, Line, Strip, as_points, cross, dot, norm, perp, sub, unit

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Hull:
    """Counterclockwise, strictly convex vertex cycle starting at the lexicographic minimum.

    One- and two-vertex hulls (a point, a segment) are legal.
    """

    vertices: tuple
    _angles: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((float(x), float(y)) for x, y in self.vertices))
        if len(self.vertices) >= 3:
            object.__setattr__(self, "_angles", _edge_angles(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self):
        v = self.vertices
        if len(v) < 2:
            return []
        if len(v) == 2:
            return [(v[0], v[1]), (v[1], v[0])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def array(self):
        return np.asarray(self.vertices, dtype=float).reshape(-1, 2)


@dataclass(frozen=True)
class HullDelta:
    removed_edges: tuple = ()
    added_edges: tuple = ()


def _edge_angles(v):
    # Strictly increasing unwrapped angles of the CCW edge directions.
    out = []
    prev = None
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)]
        ang = math.atan2(b[1] - a[1], b[0] - a[0])
        if prev is not None:
            while ang <= prev:
                ang += TWO_PI
        out.append(ang)
        prev = ang
    return tuple(out)


def _akl_toussaint(arr):
    # Discard points strictly inside the octagon of extreme points.
    dirs = np.array([[1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1]], float)
    proj = arr @ dirs.T
    ext = arr[np.argmax(proj, axis=0)]
    poly = [tuple(p) for i, p in enumerate(ext) if i == 0 or tuple(p) != tuple(ext[i - 1])]
    while len(poly) > 1 and poly[0] == poly[-1]:
        poly.pop()
    if len(poly) < 3:
        return arr
    keep = np.zeros(len(arr), dtype=bool)
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        s = (b[0] - a[0]) * (arr[:, 1] - a[1]) - (b[1] - a[1]) * (arr[:, 0] - a[0])
        keep |= s <= 0
    return arr[keep]


def convex_hull(pts, tol=TAU):
    """Andrew's monotone chain; vertices closer than ``tol`` to a hull edge are dropped."""
    arr = as_points(pts)
    if len(arr) == 0:
        raise EmptyInput("convex_hull needs at least one point")
    if len(arr) > 64:
        arr = _akl_toussaint(arr)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    srt = [tuple(p) for p in arr[order].tolist()]
    uniq = [srt[0]]
    for p in srt[1:]:
        if p != uniq[-1]:
            uniq.append(p)
    if len(uniq) <= 2:
        return Hull(uniq)

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                a, b = out[-2], out[-1]
                o = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
                if o <= tol * math.hypot(p[0] - a[0], p[1] - a[1]):
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(uniq)
    upper = half(reversed(uniq))
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 2:
        verts = [uniq[0], uniq[-1]]
    return Hull(verts)


def extreme_point(h, d, tol=TAU):
    """Vertex maximizing ``<d, v>``; near-ties go to the lexicographically smallest vertex."""
    v = h.vertices
    n = len(v)
    if n <= 8:
        cand = range(n)
    else:
        ang = h._angles
        t = math.atan2(d[1], d[0]) + 0.5 * math.pi
        while t < ang[0]:
            t += TWO_PI
        while t >= ang[0] + TWO_PI:
            t -= TWO_PI
        i = bisect_left(ang, t) % n
        cand = ((i - 1) % n, i, (i + 1) % n)
    best = max(dot(d, v[i]) for i in cand)
    return min(v[i] for i in cand if dot(d, v[i]) >= best - tol)


def point_in_hull(h, p, tol=TAU):
    v = h.vertices
    if len(v) == 1:
        return norm(sub(p, v[0])) <= tol
    if len(v) == 2:
        a, b = v
        ab = sub(b, a)
        L = norm(ab)
        if abs(cross(ab, sub(p, a))) > tol * L:
            return False
        t = dot(ab, sub(p, a)) / (L * L)
        return -tol / L <= t <= 1 + tol / L
    for a, b in h.edges():
        if cross(sub(b, a), sub(p, a)) < -tol * norm(sub(b, a)):
            return False
    return True


def _rotate_to_min(verts):
    i = min(range(len(verts)), key=lambda k: verts[k])
    return verts[i:] + verts[:i]


def _drop_flat(cyc, tol):
    # remove vertices lying within tol of the chord of their neighbours
    changed = True
    while changed and len(cyc) > 2:
        changed = False
        for i in range(len(cyc)):
            a, b, c = cyc[i - 1], cyc[i], cyc[(i + 1) % len(cyc)]
            if cross(sub(c, a), sub(b, a)) >= -tol * norm(sub(c, a)):
                del cyc[i]
                changed = True
                break
    return cyc


def insert_hull(h, p, tol=TAU):
    """Return ``(conv(h + {p}), delta)``."""
    p = (float(p[0]), float(p[1]))
    if point_in_hull(h, p, tol):
        return h, HullDelta()
    v = list(h.vertices)
    n = len(v)
    if n < 3:
        new = convex_hull(v + [p], tol)
    else:
        vis = [cross(sub(v[(i + 1) % n], v[i]), sub(p, v[i])) < -tol * norm(sub(v[(i + 1) % n], v[i]))
               for i in range(n)]
        # first visible edge whose predecessor is not visible
        start = next(i for i in range(n) if vis[i] and not vis[i - 1])
        end = start
        while vis[end % n]:
            end += 1
        # edges start..end-1 are visible; keep vertices end .. start (cyclic)
        keep = [v[(end + k) % n] for k in range((start - end) % n + 1)]
        new = Hull(_rotate_to_min(_drop_flat(keep + [p], tol)))
    old_e = set(h.edges())
    new_e = set(new.edges())
    delta = HullDelta(tuple(sorted(old_e - new_e)), tuple(sorted(new_e - old_e)))
    return new, delta


def _strip_for_normal(arr, n):
    proj = arr @ np.asarray(n)
    return Strip(tuple(n), float(proj.min()), float(proj.max()))


def min_width_strip(h):
    """Rotating calipers: the narrowest covering strip, flush with a hull edge."""
    v = h.vertices
    if len(v) == 1:
        return Strip((0.0, 1.0), v[0][1], v[0][1])
    if len(v) == 2:
        n = perp(unit(sub(v[1], v[0])))
        return Strip(n, dot(n, v[0]), dot(n, v[0])).canonical()
    m = len(v)
    best = None
    j = 1
    for i in range(m):
        a, b = v[i], v[(i + 1) % m]
        e = sub(b, a)
        L = norm(e)
        # advance antipodal pointer while distance grows
        while cross(e, sub(v[(j + 1) % m], a)) > cross(e, sub(v[j], a)):
            j = (j + 1) % m
        w = cross(e, sub(v[j], a)) / L
        if best is None or w < best[0]:
            best = (w, i)
    w, i = best
    a, b = v[i], v[(i + 1) % m]
    n = perp(unit(sub(b, a)))  # inward normal for a CCW edge
    return Strip(n, dot(n, a), dot(n, a) + w).canonical()


def _norm_angle(theta):
    t = math.fmod(theta, math.pi)
    return t + math.pi if t < 0 else t


def in_open_arc(theta, lo, hi):
    """Is normal angle ``theta`` (mod pi) strictly inside the CCW arc lo -> hi?"""
    span = hi - lo
    if span <= 0:
        return False
    t = _norm_angle(theta - lo)
    return 0 < t < span


def min_width_strip_constrained(h, forbidden=None):
    """Narrowest covering strip whose normal angle (mod pi) avoids ``forbidden``.

    ``forbidden`` is ``None`` or an open arc ``(lo, hi)`` of normal angles going
    counterclockwise from ``lo`` to ``hi``; arcs longer than pi cover every
    direction and raise :class:`NoFeasibleDirection`.
    """
    if forbidden is None or forbidden[1] - forbidden[0] <= 0:
        return min_width_strip(h)
    lo, hi = forbidden
    if hi - lo > math.pi:
        raise NoFeasibleDirection("forbidden arc covers every direction")
    arr = h.array()
    cands = [lo, hi]
    for a, b in h.edges():
        n = perp(sub(b, a))
        cands.append(math.atan2(n[1], n[0]))
    if len(h) == 1:
        cands.append(lo + 0.5 * (hi - lo) + 0.5 * math.pi)
    thetas = [t for t in cands if not in_open_arc(t, lo, hi)]
    normals = np.array([[math.cos(t), math.sin(t)] for t in thetas])
    proj = arr @ normals.T
    widths = proj.max(axis=0) - proj.min(axis=0)
    k = int(np.argmin(widths))
    n = (float(normals[k, 0]), float(normals[k, 1]))
    return Strip(n, float(proj[:, k].min()), float(proj[:, k].max())).canonical()


def _separated(a, b, tol):
    """Separating-axis test: do the hulls' interiors stay apart (up to tol)?"""
    axes = []
    for hh in (a, b):
        for p, q in hh.edges():
            axes.append(perp(unit(sub(q, p))))
    if len(a) == 1 and len(b) == 1:
        return True
    if not axes:
        return True
    if len(a) <= 2 or len(b) <= 2:
        # segments/points: add the connecting directions as candidate axes
        for p in a.vertices:
            for q in b.vertices:
                if p != q:
                    axes.append(unit(sub(q, p)))
    A, B = a.array(), b.array()
    for n in axes:
        pa, pb = A @ np.asarray(n), B @ np.asarray(n)
        if pa.max() <= pb.min() + tol or pb.max() <= pa.min() + tol:
            return True
    return False


def outer_common_tangents(a, b, tol=TAU, check=True):
    """The two lines touching both hulls with both hulls on the same side.

    Returned as ``(t1, t2)`` where ``t1`` runs from a vertex of ``a`` to a vertex
    of ``b`` with both hulls on its left and ``t2`` from ``b`` back to ``a``.
    Each is given as a (point_on_a, point_on_b, Line) triple.
    """
    if check and not _separated(a, b, tol):
        raise HullsInterpenetrate("hull interiors overlap")
    va, vb = set(a.vertices), set(b.vertices)
    if len(a) == 1 and len(b) == 1:
        p, q = a.vertices[0], b.vertices[0]
        if p == q:
            raise HullsInterpenetrate("hulls coincide")
        ln = Line.through(p, q)
        return (p, q, ln), (p, q, ln)
    comb = convex_hull(list(va | vb), tol)
    t_ab = t_ba = None
    for p, q in comb.edges():
        if p in va and q in vb and t_ab is None:
            t_ab = (p, q, Line.through(p, q))
        elif p in vb and q in va and t_ba is None:
            t_ba = (q, p, Line.through(p, q))
    if len(comb) == 2:
        p, q = comb.vertices
        pa = p if p in va else q
        pb = q if pa == p else p
        if pa in vb and pb in va:
            pa, pb = pb, pa
        ln = Line.through(pa, pb) if pa != pb else None
        return (pa, pb, ln), (pa, pb, ln)
    if t_ab is None or t_ba is None:
        raise HullsInterpenetrate("one hull contains the other")
    return t_ab, t_ba


# ---------------------------------------------------------------------------
# Halfplane-extreme indexes


def _pick_extreme(pts, d, tol):
    proj = pts @ np.asarray(d, dtype=float)
    m = proj.max()
    cand = pts[proj >= m - tol]
    if len(cand) == 1:
        return (float(cand[0, 0]), float(cand[0, 1]))
    k = np.lexsort((cand[:, 1], cand[:, 0]))[0]
    return (float(cand[k, 0]), float(cand[k, 1]))


class ScanIndex:
    """Tier-1 index: filter-and-scan, O(n) per query, no preprocessing."""

    tier = 1

    def __init__(self, pts, tol=TAU):
        self.points = as_points(pts)
        if len(self.points) == 0:
            raise EmptyInput("index needs at least one point")
        self.tol = tol

    def region(self, h):
        return self.points[h.mask(self.points, self.tol)]

    def halfplane_extreme(self, h, d):
        sub_pts = self.region(h)
        if len(sub_pts) == 0:
            raise EmptyRegion("no input point in query halfplane")
        return _pick_extreme(sub_pts, d, self.tol)

    def region_hull(self, h):
        sub_pts = self.region(h)
        if len(sub_pts) == 0:
            raise EmptyRegion("no input point in query halfplane")
        return convex_hull(sub_pts, self.tol)


class ArrangementIndex:
    """Tier-2 index over the dual arrangement of the point set.

    Normal angles are cut at every direction where two points have equal
    projection.  Inside one angular cell the projection order is fixed, so
    ``P ∩ h`` is a prefix of that order and its hull is a stored version of the
    incrementally built prefix hull.  Queries cost two binary searches plus a
    logarithmic extreme-point search.  Preprocessing is cubic in n, so this is
    meant for small inputs.
    """

    tier = 2

    def __init__(self, pts, tol=TAU):
        self.points = as_points(pts)
        n = len(self.points)
        if n == 0:
            raise EmptyInput("index needs at least one point")
        self.tol = tol
        crit = set()
        P = self.points
        for i in range(n):
            for j in range(i + 1, n):
                dx, dy = P[j] - P[i]
                base = math.atan2(dy, dx) + 0.5 * math.pi
                crit.add(base % TWO_PI)
                crit.add((base + math.pi) % TWO_PI)
        self.cuts = sorted(crit) if crit else [0.0]
        self.cells = []
        for k, c in enumerate(self.cuts):
            nxt = self.cuts[(k + 1) % len(self.cuts)]
            if nxt <= c:
                nxt += TWO_PI
            mid = 0.5 * (c + nxt)
            m = np.array([math.cos(mid), math.sin(mid)])
            order = np.argsort(-(P @ m), kind="stable")
            hulls = []
            cur = None
            for idx in order:
                p = tuple(P[idx])
                cur = Hull([p]) if cur is None else insert_hull(cur, p, tol)[0]
                hulls.append(cur)
            self.cells.append((order, tuple(hulls)))

    def _prefix(self, h):
        nx, ny = h.normal
        if h.offset == -math.inf:
            return len(self.points), self.cells[0]
        phi = math.atan2(ny, nx) % TWO_PI
        k = bisect_right(self.cuts, phi) - 1
        cell = self.cells[k % len(self.cells)]
        order = cell[0]
        thr = h.offset - self.tol
        proj = lambda i: float(self.points[order[i]] @ np.asarray(h.normal))
        lo, hi = 0, len(order)
        while lo < hi:
            mid = (lo + hi) // 2
            if proj(mid) >= thr:
                lo = mid + 1
            else:
                hi = mid
        return lo, cell

    def region_hull(self, h):
        k, cell = self._prefix(h)
        if k == 0:
            raise EmptyRegion("no input point in query halfplane")
        return cell[1][k - 1]

    def halfplane_extreme(self, h, d):
        return extreme_point(self.region_hull(h), d, self.tol)


def build_halfplane_index(pts, tier=1, tol=TAU):
    if tier == 1:
        return ScanIndex(pts, tol)
    if tier == 2:
        return ArrangementIndex(pts, tol)
    raise ValueError(f"unknown index tier {tier}")


def halfplane_extreme(idx, h, d):
    return idx.halfplane_extreme(h, d)


__all__ = [
    "Hull", "HullDelta", "Halfplane", "convex_hull", "extreme_point", "insert_hull",
    "point_in_hull", "min_width_strip", "min_width_strip_constrained", "outer_common_tangents",
    "build_halfplane_index", "halfplane_extreme", "ScanIndex", "ArrangementIndex", "in_open_arc",
]
