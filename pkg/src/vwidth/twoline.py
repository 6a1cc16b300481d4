"""Exact minimum-width V-shape for points lying on two crossing lines.

The 13-approximation snaps every point onto one of two lines and then needs the
optimum for that snapped set.  Here the hulls involved have at most four
vertices, so each split of the points can be finished in constant time
(``cut_candidates``); ``min_vshape_two_lines`` tries the few families of splits
that can carry an optimum.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DegenerateInput, EmptySide, HullsInterpenetrate, NoValidVShape, ParallelStrips
from .exact import SolveReport
from .geom import TAU, Line, Strip, as_points, cross, dedupe, diameter, dot, line_intersection, perp, \
    sub, unit
from .hull import convex_hull, outer_common_tangents
from .vshape import VShape, contains_all, strips_to_vshape, widths


@dataclass(frozen=True)
class TwoLineInstance:
    l1: Line
    l2: Line
    pts: np.ndarray

    def __post_init__(self):
        if abs(cross(self.l1.normal, self.l2.normal)) <= TAU:
            raise DegenerateInput("the two lines are parallel")
        P = as_points(self.pts)
        far = (np.abs(P @ np.asarray(self.l1.normal) - self.l1.offset) > TAU * 10) & \
              (np.abs(P @ np.asarray(self.l2.normal) - self.l2.offset) > TAU * 10)
        if far.any():
            raise DegenerateInput(f"{int(far.sum())} point(s) lie on neither line")
        object.__setattr__(self, "pts", P)

    @property
    def z(self):
        return line_intersection(self.l1.normal, self.l1.offset, self.l2.normal, self.l2.offset)

    def on_line(self, k, tol=TAU * 10):
        ln = self.l1 if k == 1 else self.l2
        return self.pts[np.abs(self.pts @ np.asarray(ln.normal) - ln.offset) <= tol]


def _strip_along(X, n):
    proj = X @ np.asarray(n)
    return Strip(tuple(n), float(proj.min()), float(proj.max()))


def _directions(hull):
    v = hull.vertices
    if len(v) < 2:
        return []
    return [perp(unit(sub(q, p))) for p, q in hull.edges()]


def cut_candidates(inst, split, extra_normals=(), tol=TAU, bound=math.inf):
    """Best V-shape putting the two sides of ``split`` in different arms.

    Points on the split line go to both sides.  Arm directions come from hull
    edges of each side and the two outer common tangents; ``extra_normals``
    can add more (the caller passes the normals of the two lines).  Strip
    pairs whose width cannot beat ``bound`` are skipped.
    """
    P = inst.pts if isinstance(inst, TwoLineInstance) else as_points(inst)
    val = P @ np.asarray(split.normal) - split.offset
    R, L = P[val >= -tol], P[val <= tol]
    if len(R) == 0 or len(L) == 0:
        raise EmptySide("split leaves one side empty")
    hr, hl = convex_hull(R), convex_hull(L)
    shared = []
    try:
        for t in outer_common_tangents(hr, hl, check=False):
            if t[2] is not None:
                shared.append(t[2].normal)
    except HullsInterpenetrate:
        pass
    extra = list(extra_normals)
    cand_r = _directions(hr) + shared + extra
    cand_l = _directions(hl) + shared + extra
    sr_all = [_strip_along(R, n) for n in cand_r]
    sl_all = [_strip_along(L, n) for n in cand_l]
    pairs = sorted(((max(a.width, b.width), i, j) for i, a in enumerate(sr_all)
                    for j, b in enumerate(sl_all)), key=lambda t: t[0])
    best = None
    for w, i, j in pairs:
        if w > bound or best is not None:
            break
        try:
            v = strips_to_vshape(sr_all[i], sl_all[j], P, tol)
        except (NoValidVShape, ParallelStrips):
            continue
        best = (w, v)
    if best is None:
        raise NoValidVShape("no strip pair from this split forms a covering V-shape")
    return best[1]


def _zero_width(inst):
    """The two lines as rays from z, if every point sits on the correct half of its line."""
    z = inst.z
    dirs = []
    for k, ln in ((1, inst.l1), (2, inst.l2)):
        d = ln.direction
        t = (inst.on_line(k) - np.asarray(z)) @ np.asarray(d)
        if (t >= -TAU * 10).all():
            dirs.append(d)
        elif (t <= TAU * 10).all():
            dirs.append((-d[0], -d[1]))
        else:
            return None
    v = VShape(z, z, dirs[0], dirs[1])
    return v if contains_all(v, inst.pts, TAU * 10) else None


def _splits(inst, eta):
    """Every split line named by the four cases, tagged with the case that produced it."""
    P = inst.pts
    z = inst.z
    hull = convex_hull(P)
    # Case 1: lines through each point parallel to a hull edge
    for p, q in hull.edges():
        n = perp(unit(sub(q, p)))
        for x in P:
            yield 1, Line(n, float(np.dot(n, x)))
    # Case 2: just either side of each line (the caller adds the +-eta shifts)
    for ln in (inst.l1, inst.l2):
        yield 2, ln
    # Case 3: the angle bisectors through z
    d1, d2 = inst.l1.direction, inst.l2.direction
    for b in ((d1[0] + d2[0], d1[1] + d2[1]), (d1[0] - d2[0], d1[1] - d2[1])):
        if math.hypot(*b) > TAU:
            n = perp(unit(b))
            yield 3, Line(n, dot(n, z))
    # Case 4: perpendicular bisectors of consecutive same-line pairs on one side of z
    for k in (1, 2):
        ln = inst.l1 if k == 1 else inst.l2
        d = ln.direction
        Q = inst.on_line(k)
        t = np.sort((Q - np.asarray(z)) @ np.asarray(d))
        for a, b in zip(t[:-1], t[1:]):
            if b - a <= TAU:
                continue
            if a < -TAU and b > TAU:
                continue  # separated by z
            mid = 0.5 * (a + b)
            yield 4, Line(d, dot(d, z) + mid)


def min_vshape_two_lines(inst):
    """Minimum-width covering V-shape of a two-line instance."""
    P = dedupe(inst.pts)
    inst = TwoLineInstance(inst.l1, inst.l2, P)
    if len(convex_hull(P)) <= 2:
        v = VShape(tuple(P[0]), tuple(P[0]), inst.l1.direction, perp(inst.l1.direction))
        if len(P) > 1:
            d = unit(sub(tuple(P[-1]), tuple(P[0])))
            proj = P @ np.asarray(d)
            start = tuple(P[int(np.argmin(proj))])
            v = VShape(start, start, d, perp(d))
        return SolveReport(v, 0.0, None, 1, algorithm="two-line", degenerate=True)
    zv = _zero_width(inst)
    if zv is not None:
        return SolveReport(zv, 0.0, None, 1, algorithm="two-line", degenerate=True)
    eta = 10 * TAU * max(diameter(P), 1.0)
    extra = (inst.l1.normal, inst.l2.normal)
    best, examined, cases = None, 0, {}
    seen = set()
    for case, base in _splits(inst, eta):
        for shift in (0.0, eta, -eta):
            split = Line(base.normal, base.offset + shift)
            key = (round(split.normal[0], 12), round(split.normal[1], 12), round(split.offset, 12))
            if key in seen:
                continue
            seen.add(key)
            examined += 1
            try:
                v = cut_candidates(P, split, extra,
                                   bound=best[0] - 1e-15 if best is not None else math.inf)
            except (EmptySide, NoValidVShape):
                continue
            w = widths(v)[2]
            if best is None or w < best[0] - 1e-15:
                best = (w, v, case)
            cases[case] = cases.get(case, 0) + 1
    if best is None:
        raise NoValidVShape("no split produced a covering V-shape")
    w, v, case = best
    return SolveReport(v, w, None, examined, algorithm="two-line",
                       degenerate=w <= TAU, stats={"winning_case": case, "splits_ok": cases})
