"""Seeded instance generators.

All randomness goes through numpy's PCG64 bit generator seeded with a
SeedSequence, so a (kind, params, seed) triple gives the same points on every
platform.  For reference, ``gen_instance("uniform", {"n": 2}, seed=0)`` starts
with 0.6369616873214543.
"""

import math

import numpy as np

from .errors import InvalidParameter


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def uniform(n, rng, box=(0.0, 0.0, 1.0, 1.0)):
    x0, y0, x1, y1 = box
    U = rng.random((n, 2))
    return np.column_stack([x0 + U[:, 0] * (x1 - x0), y0 + U[:, 1] * (y1 - y0)])


def noisy_corner(n, rng, sigma=0.01, angle_deg=60.0, length=1.0, corner=(0.0, 0.0)):
    """Points along two rays leaving ``corner``, jittered perpendicular to their ray."""
    a = math.radians(angle_deg)
    dirs = np.array([[1.0, 0.0], [math.cos(a), math.sin(a)]])
    which = rng.integers(0, 2, n)
    t = rng.random(n) * length
    off = rng.standard_normal(n) * sigma
    d = dirs[which]
    nrm = np.column_stack([-d[:, 1], d[:, 0]])
    return np.asarray(corner) + t[:, None] * d + off[:, None] * nrm


def _kgon(k, center, rot):
    a = rot + 2 * math.pi * np.arange(k) / k
    return np.column_stack([center[0] + np.cos(a), center[1] + np.sin(a)])


def two_kgon(k, separation=10.0, guard="pairs", guard_factor=0.5):
    """Two unit regular k-gons, far apart, plus guard points.

    The polygons sit at (-separation, 0) and (separation, 0), turned a quarter
    step apart so no edge of one is parallel to an edge of the other.  With
    ``guard="pairs"`` one guard point sits straight above and one straight
    below each polygon's center at distance 1 + guard_factor * w, with w the
    polygon's width.  These rule out the cheap cover by two nearly parallel
    strips along the line of centers, yet every narrowest strip of a polygon
    that is steep enough to pass through its two guards still works.  The
    number of such strips grows linearly in k, so the number of optimal
    V-shapes grows quadratically (visible from k = 12 on).

    ``guard="rows"`` instead places a row of k evenly spaced guards 1.5 w
    above and below the pair, spanning both polygons.
    """
    if k < 3:
        raise InvalidParameter("two_kgon needs k >= 3")
    if separation <= 2:
        raise InvalidParameter("the polygons must not overlap (separation > 2)")
    step = 2 * math.pi / k
    inr = math.cos(math.pi / k)
    w = 2 * inr if k % 2 == 0 else 1 + inr
    A = _kgon(k, (-separation, 0.0), step / 4)
    B = _kgon(k, (separation, 0.0), -step / 4)
    parts = [A, B]
    if guard == "pairs":
        h = 1 + guard_factor * w
        for cx in (-separation, separation):
            parts.append(np.array([[cx, h], [cx, -h]]))
    elif guard == "rows":
        h = 1 + 1.5 * w
        xs = np.linspace(-separation - 1, separation + 1, k)
        parts += [np.column_stack([xs, np.full(k, h)]), np.column_stack([xs, np.full(k, -h)])]
    elif guard != "none":
        raise InvalidParameter(f"unknown guard layout {guard!r}")
    return np.concatenate(parts)


def kgon_width(k):
    inr = math.cos(math.pi / k)
    return 2 * inr if k % 2 == 0 else 1 + inr


KINDS = ("uniform", "noisy_corner", "two_kgon")


def gen_instance(kind, params=None, seed=0):
    """Points for a named generator; ``params`` are the generator's keyword arguments."""
    params = dict(params or {})
    if kind == "uniform":
        n = int(params.pop("n", 100))
        if n < 1:
            raise InvalidParameter("n must be >= 1")
        return uniform(n, rng_for(seed), **params)
    if kind == "noisy_corner":
        n = int(params.pop("n", 100))
        if n < 1:
            raise InvalidParameter("n must be >= 1")
        if params.get("sigma", 0.01) < 0:
            raise InvalidParameter("sigma must be >= 0")
        return noisy_corner(n, rng_for(seed), **params)
    if kind == "two_kgon":
        k = int(params.pop("k", 6))
        return two_kgon(k, **params)
    raise InvalidParameter(f"unknown generator {kind!r}; choose from {', '.join(KINDS)}")
