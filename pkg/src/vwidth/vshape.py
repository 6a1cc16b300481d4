"""The V-shape model: containment, widths, balancing, widening and constructors.

A V-shape has an inner apex ``x`` and an outer apex ``y``.  Its left arm is
``segment(x, y) + ray(dir_left)`` and its right arm ``segment(x, y) +
ray(dir_right)``; the region is the union of the two arms.  ``dir_left`` lies
left of the directed line x -> y.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NoValidVShape, ParallelInnerLines, ParallelStrips
from .geom import (TAU, Strip, add, as_points, cross, dot, line_intersection, norm, perp, scale,
                   sub, unit)
from .hull import extreme_point


class CanonicalType(str, Enum):
    BOTH_OUTER = "both-outer"
    INNER_OUTER = "inner-outer"
    BOTH_INNER = "both-inner"


@dataclass(frozen=True)
class VShape:
    apex_inner: tuple
    apex_outer: tuple
    dir_left: tuple
    dir_right: tuple

    @property
    def x(self):
        return self.apex_inner

    @property
    def y(self):
        return self.apex_outer

    def widths(self):
        return widths(self)

    @property
    def width(self):
        return widths(self)[2]

    @property
    def degenerate(self):
        """True when an arm has (numerically) zero width."""
        wl, wr, _ = widths(self)
        return min(wl, wr) <= TAU

    def strips(self):
        return arm_strip(self, self.dir_left), arm_strip(self, self.dir_right)

    def mapped(self, sim):
        """Map a V-shape from normalized coordinates back through a Similarity."""
        return VShape(sim.point_back(self.x), sim.point_back(self.y), self.dir_left, self.dir_right)

    def key(self, digits=7):
        r = lambda p: (round(p[0], digits) + 0.0, round(p[1], digits) + 0.0)
        return (r(self.x), r(self.y), r(self.dir_left), r(self.dir_right))


@dataclass(frozen=True)
class Wedge:
    """Empty wedge: a, b on one inner ray, c, d on the other, counterclockwise.

    The uncovered notch is the open region left of both a->b and c->d.
    """

    a: tuple
    b: tuple
    c: tuple
    d: tuple


def arm_strip(v, d):
    n = perp(d)
    px, py = dot(n, v.x), dot(n, v.y)
    return Strip(n, min(px, py), max(px, py)).canonical()


def widths(v):
    u = sub(v.y, v.x)
    wl = abs(cross(v.dir_left, u))
    wr = abs(cross(v.dir_right, u))
    return wl, wr, max(wl, wr)


def _dist_to_ray(P, o, d):
    rel = P - np.asarray(o)
    t = np.maximum(rel @ np.asarray(d), 0.0)
    return np.hypot(rel[:, 0] - t * d[0], rel[:, 1] - t * d[1])


def _dist_to_segment(P, a, b):
    ab = np.asarray(sub(b, a))
    rel = P - np.asarray(a)
    L2 = float(ab @ ab)
    if L2 == 0.0:
        return np.hypot(rel[:, 0], rel[:, 1])
    t = np.clip(rel @ ab / L2, 0.0, 1.0)
    return np.hypot(rel[:, 0] - t * ab[0], rel[:, 1] - t * ab[1])


def _arm_coords(v, d, P):
    """(s, t, c): P = x + s*(y-x) + t*d, with c = cross(y-x, d); None when the arm is flat."""
    u = sub(v.y, v.x)
    c = cross(u, d)
    if c == 0.0:
        return None
    M = np.array([[d[1], -u[1]], [-d[0], u[0]]]) / c
    st = (P - np.asarray(v.x)) @ M
    return st[:, 0], st[:, 1], abs(c)


def _arm_tests(v, d, P, tol):
    """Strict interior mask and a tol-widened mask (a necessary condition for containment)."""
    co = _arm_coords(v, d, P)
    if co is None or co[2] <= tol:  # thinner arms are handled by the distance test alone
        return np.zeros(len(P), dtype=bool), np.ones(len(P), dtype=bool)
    s, t, c = co
    strict = (s >= 0.0) & (s <= 1.0) & (t >= 0.0)
    es, et = tol / c, tol * norm(sub(v.y, v.x)) / c
    loose = (s >= -es) & (s <= 1.0 + es) & (t >= -et)
    return strict, loose


def _arm_near(v, d, P, tol):
    near = np.minimum(np.minimum(_dist_to_ray(P, v.x, d), _dist_to_ray(P, v.y, d)),
                      _dist_to_segment(P, v.x, v.y))
    return near <= tol


def arm_mask(v, d, P, tol=TAU):
    """Points of P (array) within ``tol`` of the arm segment(x,y)+ray(d)."""
    strict, loose = _arm_tests(v, d, P, tol)
    rest = np.nonzero(~strict & loose)[0]
    if len(rest):
        strict[rest] = _arm_near(v, d, P[rest], tol)
    return strict


def contains_mask(v, pts, tol=TAU, stop_early=False):
    P = as_points(pts)
    sl, ll = _arm_tests(v, v.dir_left, P, tol)
    sr, lr = _arm_tests(v, v.dir_right, P, tol)
    m = sl | sr
    maybe = ~m & (ll | lr)
    if stop_early and not np.all(m | maybe):
        return None
    rest = np.nonzero(maybe)[0]
    if len(rest):
        R = P[rest]
        m[rest] = _arm_near(v, v.dir_left, R, tol) | _arm_near(v, v.dir_right, R, tol)
    return m


def contains(v, p, tol=TAU):
    return bool(contains_mask(v, [p], tol)[0])


def contains_all(v, pts, tol=TAU):
    m = contains_mask(v, pts, tol, stop_early=True)
    return m is not None and bool(np.all(m))


def _sample_points(v, reach=1.0):
    pts = [v.x, v.y]
    for d in (v.dir_left, v.dir_right):
        for s in (0.0, 0.5, 1.0):
            base = add(v.x, scale(sub(v.y, v.x), s))
            for t in (0.0, reach, 4 * reach):
                pts.append(add(base, scale(d, t)))
    return pts


def _outward_normal(v, d, other):
    """Normal of the arm with direction d pointing from its inner to its outer line."""
    n = perp(d)
    proj = dot(n, sub(v.y, v.x))
    if abs(proj) > TAU:
        return n if proj > 0 else scale(n, -1.0)
    return n if dot(n, other) <= 0 else scale(n, -1.0)


def _from_lines(lines_inner, lines_outer, dl, dr):
    (nl, cl), (nr, cr) = lines_inner
    x = line_intersection(nl, cl, nr, cr)
    (ml, kl), (mr, kr) = lines_outer
    y = line_intersection(ml, kl, mr, kr)
    if x is None or y is None:
        return None
    return VShape(x, y, dl, dr)


def widen(v, delta, pts=None, tol=TAU):
    """Translate all four boundary lines outward by ``delta``; each arm grows by 2*delta.

    When ``pts`` is given the result is checked to cover them, inflating
    ``delta`` by 4*tol until it does.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if delta == 0:
        return v
    samples = _sample_points(v, reach=1.0 + norm(sub(v.y, v.x)))
    best = None
    for flip_l in _orientations(v, v.dir_left, v.dir_right):
        for flip_r in _orientations(v, v.dir_right, v.dir_left):
            nl, nr = flip_l, flip_r
            inner = ((nl, dot(nl, v.x) - delta), (nr, dot(nr, v.x) - delta))
            outer = ((nl, dot(nl, v.y) + delta), (nr, dot(nr, v.y) + delta))
            w = _from_lines(inner, outer, v.dir_left, v.dir_right)
            if w is not None and contains_all(w, samples, tol=1e-7 * (1 + delta)):
                best = w
                break
        if best is not None:
            break
    if best is None:
        raise NoValidVShape("widening produced no consistent V-shape")
    if pts is not None and not contains_all(best, pts, tol):
        return widen(v, delta + 4 * tol, pts, tol)
    return best


def _orientations(v, d, other):
    n = _outward_normal(v, d, other)
    if abs(cross(d, sub(v.y, v.x))) > TAU:
        return [n]
    return [n, scale(n, -1.0)]


def balance(v):
    """Widen the narrower arm (moving its outer line) until both arm widths are equal."""
    wl, wr, w = widths(v)
    if abs(wl - wr) <= 1e-15 * max(1.0, w):
        return v
    if wl < wr:
        d_move, d_keep, gap = v.dir_left, v.dir_right, wr - wl
    else:
        d_move, d_keep, gap = v.dir_right, v.dir_left, wl - wr
    m_keep = perp(d_keep)
    k_keep = dot(m_keep, v.y)
    cands = []
    for n in _orientations(v, d_move, d_keep):
        y2 = line_intersection(n, dot(n, v.y) + gap, m_keep, k_keep)
        if y2 is None:
            continue
        t = dot(sub(v.y, y2), d_keep)
        cands.append((t < -1e-12, y2))
    if not cands:
        raise NoValidVShape("cannot balance a V-shape with parallel arms")
    cands.sort(key=lambda c: c[0])
    return VShape(v.x, cands[0][1], v.dir_left, v.dir_right)


def _label(p, q, d1, d2):
    """Build a VShape from apex pair and arm directions; None if arms share a side."""
    u = sub(q, p)
    c1, c2 = cross(u, d1), cross(u, d2)
    eps = 1e-12 * max(1.0, norm(u))
    c1 = 0.0 if abs(c1) <= eps else c1
    c2 = 0.0 if abs(c2) <= eps else c2
    if c1 * c2 > 0:
        return None
    s = add(d1, d2)
    if dot(u, s) > 0:
        p, q = q, p
        u = scale(u, -1.0)
        c1, c2 = -c1, -c2
    if c1 > 0 or (c1 == 0 and c2 < 0):
        return VShape(p, q, d1, d2)
    return VShape(p, q, d2, d1)


def strip_vshapes(s1, s2):
    """Every V-shape whose two arm strips are exactly ``s1`` and ``s2`` (up to 8)."""
    corner = {}
    for a in (s1.lo, s1.hi):
        for b in (s2.lo, s2.hi):
            corner[(a, b)] = line_intersection(s1.normal, a, s2.normal, b)
    diagonals = [(corner[(s1.lo, s2.lo)], corner[(s1.hi, s2.hi)]),
                 (corner[(s1.lo, s2.hi)], corner[(s1.hi, s2.lo)])]
    a1, a2 = s1.axis, s2.axis
    out = []
    for p, q in diagonals:
        for d1 in (a1, scale(a1, -1.0)):
            for d2 in (a2, scale(a2, -1.0)):
                v = _label(p, q, d1, d2)
                if v is not None:
                    out.append(v)
    return out


def strips_to_vshape(s1, s2, pts, tol=TAU):
    """A covering V-shape whose two strips are exactly ``s1`` and ``s2``."""
    if abs(cross(s1.normal, s2.normal)) <= tol:
        raise ParallelStrips("strips are parallel")
    P = as_points(pts)
    found = [v for v in strip_vshapes(s1, s2) if contains_all(v, P, tol)]
    if not found:
        raise NoValidVShape("no V-shape formed by these strips covers the points")
    return min(found, key=lambda v: (v.width, v.x, v.y))


def wedge_to_vshape(w, hull, tol=TAU):
    """Complete an empty wedge into the V-shape whose outer lines support ``hull``."""
    a, b, c, d = w.a, w.b, w.c, w.d
    d_ab, d_cd = unit(sub(b, a)), unit(sub(d, c))
    if abs(cross(d_ab, d_cd)) <= tol:
        raise ParallelInnerLines("inner lines are parallel")
    n1, n2 = perp(d_ab), perp(d_cd)  # left normals; the notch is on the left of both
    x = line_intersection(n1, dot(n1, a), n2, dot(n2, c))
    r1 = scale(n1, -1.0)
    r2 = scale(n2, -1.0)
    w1 = dot(r1, extreme_point(hull, r1)) - dot(r1, a)
    w2 = dot(r2, extreme_point(hull, r2)) - dot(r2, c)
    y = line_intersection(r1, dot(r1, a) + max(w1, 0.0), r2, dot(r2, c) + max(w2, 0.0))
    if y is None:
        raise NoValidVShape("outer lines are parallel")
    # inner rays leave x through the wedge's points
    e1 = unit(sub(a, x)) if norm(sub(a, x)) >= norm(sub(b, x)) else unit(sub(b, x))
    e2 = unit(sub(d, x)) if norm(sub(d, x)) >= norm(sub(c, x)) else unit(sub(c, x))
    v = _label(x, y, e1, e2)
    if v is None or v.x != x:
        raise NoValidVShape("wedge does not open away from the outer apex")
    if not contains_all(v, hull.vertices, tol):
        raise NoValidVShape("wedge V-shape misses hull vertices")
    return v


def _on_ray(P, o, d, tol):
    return _dist_to_ray(P, o, d) <= tol


def is_canonical(v, pts, tol=1e-7):
    """Check the three-points-per-arm condition and the non-obtuse angle condition.

    Returns ``(ok, CanonicalType or None)``.
    """
    P = as_points(pts)
    info = {}
    for side, d in (("left", v.dir_left), ("right", v.dir_right)):
        inner = P[_on_ray(P, v.x, d, tol)]
        outer = P[_on_ray(P, v.y, d, tol)]
        if len(inner) + len(outer) < 3:
            return False, None
        w = abs(cross(d, sub(v.y, v.x)))
        if w > tol and not _angles_ok(inner, outer, d, tol):
            return False, None
        info[side] = (len(inner), len(outer))
    (li, lo), (ri, ro) = info["left"], info["right"]
    if lo >= 2 and ro >= 2:
        return True, CanonicalType.BOTH_OUTER
    if (li >= 2 and ro >= 2) or (ri >= 2 and lo >= 2):
        return True, CanonicalType.INNER_OUTER
    if li >= 2 and ri >= 2:
        return True, CanonicalType.BOTH_INNER
    return False, None


def _angles_ok(inner, outer, d, tol):
    # some (pair on one ray, third on the other) triple with non-obtuse base angles
    for two, one in ((inner, outer), (outer, inner)):
        if len(two) < 2 or len(one) < 1:
            continue
        proj = two @ np.asarray(d)
        order = np.argsort(proj)
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                s1, s2 = two[order[i]], two[order[j]]
                for s3 in one:
                    if (np.dot(s2 - s1, s3 - s1) >= -tol and np.dot(s1 - s2, s3 - s2) >= -tol):
                        return True
    return False
