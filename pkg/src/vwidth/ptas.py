"""(1+eps)-approximation by anchor pairs, a direction grid and a fixed-direction sweep.

Some strip of an optimal V-shape contains a pair of points (an anchor pair)
at least half as far apart as the points it covers.  Rotating that strip to
a nearby grid direction around the pair costs at most a factor 1 + eps/3,
so it suffices to solve the problem with one arm direction fixed, for every
grid direction of every candidate pair.

With the direction fixed, one arm's strip runs from a supporting line of the
hull to the parallel line through a point q.  Sweeping q toward that line
grows the set Q' of points the other strip must cover; the other strip is the
narrowest one covering Q' in an allowed direction.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .approx import PlugMode, approx_vshape, two_strip_cover
from .errors import EmptyInput, HullsInterpenetrate, InvalidParameter, NoCandidate, NoFeasibleDirection
from .exact import SolveReport, solve_exact
from .geom import TAU, Similarity, Strip, as_points, cross, dedupe, perp, sub, unit
from .hull import (Hull, convex_hull, in_open_arc, insert_hull, min_width_strip,
                   min_width_strip_constrained, outer_common_tangents)
from .vshape import arm_mask, contains_all, contains_mask, strip_vshapes, widths


class AnchorMode(str, Enum):
    ALL_PAIRS = "all"
    DIAMETRAL = "diametral"


class CoresetMode(str, Enum):
    EXACT = "exact"
    KERNEL = "kernel"


@dataclass(frozen=True)
class AnchorCandidate:
    p: tuple
    q: tuple

    def __post_init__(self):
        if tuple(self.p) == tuple(self.q):
            raise InvalidParameter("anchor pair needs two distinct points")

    @property
    def theta(self):
        return math.atan2(self.q[1] - self.p[1], self.q[0] - self.p[0])

    @property
    def length(self):
        return math.hypot(self.q[0] - self.p[0], self.q[1] - self.p[1])


@dataclass(frozen=True)
class DirectionGrid:
    beta: float
    gamma: float
    thetas: tuple

    @property
    def steps(self):
        return (len(self.thetas) - 1) // 2


def beta_gamma(eps, w_lo, w_hi, d_pq):
    """Grid step and half-range for one anchor pair."""
    if not (eps > 0 and w_lo > 0 and w_hi >= w_lo and d_pq > 0):
        raise InvalidParameter("need eps > 0, 0 < w_lo <= w_hi and d_pq > 0")
    beta = math.asin(min(eps * w_lo / (6.0 * d_pq), 1.0))
    gamma = beta + math.asin(min(1.0, w_hi / d_pq))
    return beta, gamma


def direction_grid(anchor, eps, w_lo, w_hi):
    beta, gamma = beta_gamma(eps, w_lo, w_hi, anchor.length)
    m = math.ceil(gamma / beta - 1e-12)
    t0 = anchor.theta
    return DirectionGrid(beta, gamma, tuple(t0 + i * beta for i in range(-m, m + 1)))


# ---------------------------------------------------------------------------
# anchor candidates


def _diametral_pair(X):
    H = convex_hull(X).array()
    if len(H) < 2:
        return None
    D = ((H[:, None, :] - H[None, :, :]) ** 2).sum(axis=2)
    i, j = np.unravel_index(int(np.argmax(D)), D.shape)
    if D[i, j] <= 0:
        return None
    a, b = tuple(H[i]), tuple(H[j])
    return (a, b) if a < b else (b, a)


def candidate_anchor_pairs(pts, mode=AnchorMode.ALL_PAIRS, levels=2):
    """Candidate anchor pairs.

    ALL_PAIRS returns every unordered pair, which contains the diametral pair
    of each strip of any cover.  DIAMETRAL is a heuristic: the farthest pair,
    then the farthest pair of each half cut off by that pair's bisector, for
    ``levels`` rounds of halving.
    """
    P = dedupe(pts)
    mode = AnchorMode(mode)
    if len(P) < 2:
        raise EmptyInput("need at least two distinct points")
    if mode is AnchorMode.ALL_PAIRS:
        i, j = np.triu_indices(len(P), 1)
        return [AnchorCandidate(tuple(P[a]), tuple(P[b])) for a, b in zip(i.tolist(), j.tolist())]
    seen, out = set(), []
    groups = [P]
    for _ in range(levels + 1):
        nxt = []
        for X in groups:
            pair = _diametral_pair(X) if len(X) >= 2 else None
            if pair is None:
                continue
            if pair not in seen:
                seen.add(pair)
                out.append(AnchorCandidate(*pair))
            a, b = np.asarray(pair[0]), np.asarray(pair[1])
            side = (X - 0.5 * (a + b)) @ (b - a)
            nxt += [X[side < 0], X[side >= 0]]
        groups = nxt
    return out


# ---------------------------------------------------------------------------
# directional-width coresets


def fatness_frame(pts):
    """Linear map (2x2) that makes the point set roughly as wide as it is long."""
    P = as_points(pts)
    C = P - P.mean(axis=0)
    _, _, vt = np.linalg.svd(C, full_matrices=False)
    ext = np.ptp(C @ vt.T, axis=0)
    ext = np.maximum(ext, max(float(ext.max()), 1.0) * 1e-9)
    return (vt.T / ext).T


class DirectionalCoreset:
    """Subset of the inserted points that keeps every directional width.

    EXACT keeps the whole convex hull.  KERNEL keeps, for 2k points spread on a
    circle around the fattened hull (k = ceil(2 / sqrt(eps / 3))), the hull
    vertex nearest to each.  The fattening map is refit to the current hull
    whenever the kernel is read, so the width guarantee holds after any
    insertion order, also when the inserted set is much thinner than the
    input it was drawn from.
    """

    RADIUS = 1.5  # circle radius in half-diagonals of the fattened bounding box

    def __init__(self, mode=CoresetMode.EXACT, eps=0.1):
        self.mode = CoresetMode(mode)
        self.eps = eps
        self._hull = None
        self._kernel = None
        if self.mode is CoresetMode.KERNEL:
            k = math.ceil(2.0 / math.sqrt(eps / 3.0))
            ang = np.arange(2 * k) * (math.pi / k)
            self._circle = np.stack([np.cos(ang), np.sin(ang)], axis=1)

    def __len__(self):
        return len(self.points())

    def insert_many(self, X):
        X = as_points(X)
        if len(X) == 0:
            return self
        if self._hull is not None:
            X = np.concatenate([self._hull.array(), X])
        self._hull = convex_hull(X)
        self._kernel = None
        return self

    def _select(self):
        H = self._hull.array()
        if len(H) <= 3:
            return H
        Y = (H - H.mean(axis=0)) @ fatness_frame(H).T
        lo, hi = Y.min(axis=0), Y.max(axis=0)
        G = 0.5 * (lo + hi) + self.RADIUS * 0.5 * float(np.hypot(*(hi - lo))) * self._circle
        d2 = (Y ** 2).sum(axis=1)[:, None] - 2.0 * Y @ G.T
        return H[np.unique(np.argmin(d2, axis=0))]

    def points(self):
        if self._hull is None:
            return []
        if self.mode is CoresetMode.EXACT:
            return list(self._hull.vertices)
        if self._kernel is None:
            self._kernel = convex_hull(self._select())
        return list(self._kernel.vertices)

    def hull(self):
        if self._hull is None or self.mode is CoresetMode.EXACT:
            return self._hull
        self.points()
        return self._kernel

    def width(self, normal):
        pts = self.points()
        if not pts:
            return 0.0
        pr = np.asarray(pts) @ np.asarray(normal, float)
        return float(pr.max() - pr.min())


def coreset_insert(cs, p, eps=None):
    """Insert one point; returns the same (updated) coreset."""
    p = (float(p[0]), float(p[1]))
    cs._hull = Hull([p]) if cs._hull is None else insert_hull(cs._hull, p)[0]
    cs._kernel = None
    return cs


# ---------------------------------------------------------------------------
# one fixed direction


class _Context:
    """Per-input data shared by all sweeps: points, hull and a sentinel sample."""

    def __init__(self, P, eps, coreset, sentinels=256, seed=0):
        self.P = P
        self.eps = eps
        self.coreset = CoresetMode(coreset)
        self.hull = convex_hull(P)
        H = self.hull.array()
        self.H = H
        if len(P) <= sentinels:
            self.S = P
        else:
            rng = np.random.default_rng(seed)
            self.S = np.unique(np.concatenate([H, P[rng.choice(len(P), sentinels, replace=False)]]), axis=0)
        self.sweeps = 0
        self.rejected = 0


def _forbidden_arc(hq, hq2):
    """Open arc of strip normals between the outer common tangents of two hulls."""
    try:
        t1, t2 = outer_common_tangents(hq, hq2, check=False)
    except HullsInterpenetrate:
        return None
    if t1[2] is None or t2[2] is None:
        return None
    a1 = math.atan2(t1[2].normal[1], t1[2].normal[0]) % math.pi
    a2 = math.atan2(t2[2].normal[1], t2[2].normal[0]) % math.pi
    lo, hi = min(a1, a2), max(a1, a2)
    if hi - lo <= 1e-15:
        return None
    ca, cb = hq.array().mean(axis=0), hq2.array().mean(axis=0)
    link = perp(unit(tuple(cb - ca))) if np.hypot(*(cb - ca)) > 0 else (0.0, 1.0)
    c = math.atan2(link[1], link[0])
    return (lo, hi) if in_open_arc(c, lo, hi) else (hi, lo + math.pi)


def _exact_extent(X, normal):
    pr = X @ np.asarray(normal)
    return Strip(tuple(map(float, normal)), float(pr.min()), float(pr.max()))


def _grow(s1, s2, t, P, bound, rounds=6):
    """Covering V-shape from s1 and s2, widening s2 over points no labeling covers.

    Points of Q that lie behind the apex are covered by neither half of s1 and
    must go to the second arm, which the tight strip of Q' may not reach.  Each
    round takes the labeling with the fewest misses and stretches s2 over them.
    """
    if abs(cross(s1.normal, s2.normal)) <= TAU:
        return None
    for _ in range(rounds):
        w = max(t, s2.width)
        if w >= bound:
            return None
        best_miss = None
        for v in strip_vshapes(s1, s2):
            m = contains_mask(v, P)
            miss = len(m) - int(m.sum())
            if miss == 0:
                return widths(v)[2], v
            if best_miss is None or miss < best_miss[0]:
                best_miss = (miss, m)
        if best_miss is None:
            return None
        pr = P[~best_miss[1]] @ np.asarray(s2.normal)
        s2 = Strip(s2.normal, min(s2.lo, float(pr.min())), max(s2.hi, float(pr.max())))
    return None


def _finish(ctx, s1, dist, t, h2, bound, exact_q2):
    """Turn a promising sweep position into a validated V-shape, or None.

    ``h2`` is the hull of the coreset of Q'; strips built on it are re-fitted
    to the exact Q' before validation, which only narrows them.
    """
    P = ctx.P
    Q2 = P[dist > t] if not exact_q2 else None

    def fit(strip):
        return strip if exact_q2 else _exact_extent(Q2, strip.normal)

    tried = set()

    def attempt(strip):
        key = (round(strip.normal[0], 12), round(strip.normal[1], 12))
        if key in tried:
            return None
        tried.add(key)
        return _grow(s1, fit(strip), t, P, bound)

    got = attempt(min_width_strip(h2))
    if got is not None:
        return got
    hq = convex_hull(P[dist <= t])
    arc = _forbidden_arc(hq, h2)
    try:
        got = attempt(min_width_strip_constrained(h2, arc))
    except NoFeasibleDirection:
        got = None
    if got is not None:
        return got
    # a short ladder over the remaining hull-edge directions
    arr = h2.array()
    cands = []
    for a, b in h2.edges():
        n = perp(unit(sub(b, a)))
        if arc is not None and in_open_arc(math.atan2(n[1], n[0]), *arc):
            continue
        pr = arr @ np.asarray(n)
        cands.append((float(pr.max() - pr.min()), n))
    cands.sort(key=lambda c: c[0])
    for w, n in cands[:4]:
        if max(w, t) >= bound:
            break
        got = attempt(_exact_extent(arr, n))
        if got is not None:
            return got
    return None


def _sweep(ctx, theta, side, bound):
    """Best V-shape with an arm along ``theta`` flush with one supporting line."""
    P, eps = ctx.P, ctx.eps
    n = (-math.sin(theta) * side, math.cos(theta) * side)
    nv = np.asarray(n)
    base = float((ctx.H @ nv).min())
    if math.isfinite(bound):
        sd = ctx.S @ nv - base
        X = ctx.S[sd >= bound]
        if len(X) >= 2 and min_width_strip(convex_hull(X)).width >= bound:
            ctx.rejected += 1
            return None
    ctx.sweeps += 1
    dist = P @ nv - base
    cand = np.nonzero(dist < bound)[0]
    if len(cand) == 0:
        return None
    # decreasing distance, ties in lexicographic point order
    order = cand[np.lexsort((P[cand, 1], P[cand, 0], -dist[cand]))]
    ts = dist[order]
    cuts = np.nonzero(np.diff(ts) != 0)[0] + 1
    starts = np.concatenate([[0], cuts])
    ends = np.concatenate([cuts, [len(order)]])
    cs = DirectionalCoreset(ctx.coreset, eps)
    cs.insert_many(P[dist >= bound] if math.isfinite(bound) else P[:0])
    exact = ctx.coreset is CoresetMode.EXACT
    best = None
    for a, b in zip(starts, ends):
        t = float(ts[a])
        h2 = cs.hull()
        if h2 is not None:
            w2 = min_width_strip(h2).width
            if w2 >= bound:
                break  # Q' only grows from here
            guess = w2 if exact else w2 * (1 + eps / 3)
            if max(t, guess) < bound:
                s1 = Strip(n, base, base + t)
                got = _finish(ctx, s1, dist, t, h2, bound, exact)
                if got is not None:
                    bound, best = got[0], got
        grp = order[a:b]
        if len(grp) == 1:
            coreset_insert(cs, P[grp[0]])
        else:
            cs.insert_many(P[grp])
    return best


def _prepare(pts, eps):
    if not eps > 0:
        raise InvalidParameter("eps must be positive")
    P0 = dedupe(pts)
    if len(P0) < 5:
        raise InvalidParameter("the approximation scheme needs at least 5 distinct points")
    sim = Similarity.fit(P0)
    return P0, sim, sim.forward(P0)


def solve_fixed_direction(pts, theta, eps, coreset=CoresetMode.EXACT):
    """Narrowest covering V-shape found with one arm in direction ``theta``.

    Raises NoCandidate when no sweep position yields a valid V-shape.
    """
    P0, sim, P = _prepare(pts, eps)
    ctx = _Context(P, min(eps, 3.0), coreset)
    best = None
    for side in (1.0, -1.0):
        got = _sweep(ctx, theta, side, best[0] if best else math.inf)
        if got is not None:
            best = got
    if best is None:
        raise NoCandidate("no V-shape with an arm in this direction")
    v = best[1].mapped(sim)
    assert contains_all(v, P0, 1e-9 * max(1.0, 1 / sim.factor)), "fixed-direction result lost a point"
    return v


# ---------------------------------------------------------------------------
# driver


def _lower_bound(P, v_apx, limit=24, seed=0):
    """A certified lower bound on the optimal width.

    Any V-shape covering P covers each subset S, and its width is at least the
    best two-strip cover width of S.  S is P itself when small, otherwise the
    points that pin the approximate V-shape's arms.
    """
    if len(P) <= limit:
        S = P
    else:
        parts = [P[:0]]
        if v_apx is not None:
            for d in (v_apx.dir_left, v_apx.dir_right):
                m = arm_mask(v_apx, d, P, 1e-9)
                if not m.any():
                    continue
                X = P[m]
                s = X @ np.asarray(d)
                off = X @ np.asarray(perp(d))
                cut = np.quantile(s, np.linspace(0, 1, 6)[1:-1])
                bins = np.searchsorted(cut, s)
                for k in range(5):
                    idx = np.nonzero(bins == k)[0]
                    if len(idx):
                        parts.append(X[[idx[np.argmin(off[idx])], idx[np.argmax(off[idx])]]])
        S = dedupe(np.concatenate(parts))
        if len(S) < limit:
            rng = np.random.default_rng(seed)
            S = dedupe(np.concatenate([S, P[rng.choice(len(P), limit - len(S), replace=False)]]))
    if len(S) < 2:
        return 0.0
    return two_strip_cover(S, PlugMode.EXACT_SMALL).width


def _lattice_directions(grids, anchors):
    """Snap every grid onto the dyadic lattice of directions mod pi.

    Each grid gets the coarsest level with spacing at most its beta and
    covers its own span; lattices of different levels nest, so overlapping
    grids share directions.  Returned in order of closeness to an anchor.
    """
    levels = [max(0, math.ceil(math.log2(math.pi / g.beta) - 1e-12)) for g in grids]
    top = max(levels) if levels else 0
    prio = {}
    for g, k, a in zip(grids, levels, anchors):
        step = math.pi / 2 ** k
        lo = g.thetas[0]
        hi = g.thetas[-1]
        i0, i1 = math.floor(lo / step), math.ceil(hi / step)
        if i1 - i0 + 1 > 2 ** k:
            i0, i1 = 0, 2 ** k - 1
        mult = 2 ** (top - k)
        for i in range(i0, i1 + 1):
            key = (i % 2 ** k) * mult
            r = abs(i * step - a.theta) / g.beta
            if r < prio.get(key, math.inf):
                prio[key] = r
    base = math.pi / 2 ** top
    return [key * base for key, _ in sorted(prio.items(), key=lambda kv: (kv[1], kv[0]))]


def solve_ptas(pts, eps, w_apx=None, guarantee=None, anchor_mode=AnchorMode.ALL_PAIRS,
               coreset=CoresetMode.EXACT, start=None, lattice=True, threads=None):
    """(1+eps)-approximate minimum-width covering V-shape.

    ``w_apx`` and ``guarantee`` describe a known approximate solution (width
    and proven factor); ``start`` may hold that V-shape.  When none is given
    the constant-factor approximation is run first.  The search never keeps
    anything wider than the starting solution, which is returned if no
    direction beats it.
    """
    anchor_mode, coreset = AnchorMode(anchor_mode), CoresetMode(coreset)
    P0, sim, P = _prepare(pts, eps)
    eps_eff = min(eps, 3.0)
    v0 = None
    if start is not None:
        v0 = sim_forward_vshape(start, sim)
        w_apx = widths(v0)[2]
    elif w_apx is None:
        mode = PlugMode.EXACT_SMALL if len(P) <= 40 else PlugMode.HEURISTIC
        v0, guarantee = approx_vshape(P, mode)
        w_apx = widths(v0)[2]
    else:
        w_apx = w_apx * sim.factor
    stats = {"anchors": 0, "directions": 0, "sweeps": 0, "rejected": 0}
    if w_apx <= TAU:
        rep_v = v0 if v0 is not None else solve_exact(P).best
        return _report(rep_v, sim, P0, eps, stats, degenerate=True)
    lb = _lower_bound(P, v0)
    w_lo = max(w_apx / guarantee if guarantee else 0.0, lb)
    if w_lo <= TAU:
        w_lo = w_apx / 13.0
    w_lo = min(w_lo, w_apx)
    stats.update(w_lo=sim.length_back(w_lo), w_hi=sim.length_back(w_apx))
    anchors = candidate_anchor_pairs(P, anchor_mode)
    grids = [direction_grid(a, eps_eff, w_lo, w_apx) for a in anchors]
    if lattice:
        thetas = _lattice_directions(grids, anchors)
    else:
        thetas = [t for g in grids for t in g.thetas]
    stats["anchors"], stats["directions"] = len(anchors), len(thetas)
    ctx = _Context(P, eps_eff, coreset)
    if v0 is not None:
        bound, best_v = w_apx, v0
    else:
        bound, best_v = (1 + eps_eff) * w_apx * (1 + 1e-12), None
    for th in thetas:
        for side in (1.0, -1.0):
            got = _sweep(ctx, th, side, bound)
            if got is not None:
                bound, best_v = got
    stats["sweeps"], stats["rejected"] = ctx.sweeps, ctx.rejected
    if best_v is None:
        raise NoCandidate("no direction produced a covering V-shape")
    return _report(best_v, sim, P0, eps, stats)


def sim_forward_vshape(v, sim):
    f = lambda p: ((p[0] - sim.center[0]) * sim.factor, (p[1] - sim.center[1]) * sim.factor)
    return type(v)(f(v.x), f(v.y), v.dir_left, v.dir_right)


def _report(v, sim, P0, eps, stats, degenerate=False):
    out = v.mapped(sim)
    w = widths(out)[2]
    assert contains_all(out, P0, 1e-9 * max(1.0, w, 1 / sim.factor)), "PTAS result lost a point"
    return SolveReport(out, w, None, stats.get("sweeps", 0), algorithm="ptas",
                       degenerate=degenerate or w <= TAU, guarantee=1 + eps, stats=stats)
