"""Planar primitives, predicates and the numeric policy.

Points and directions are plain ``(x, y)`` float tuples; point *sets* are
``(n, 2)`` float arrays.  Every predicate takes an absolute tolerance that is
meaningful because solvers first map their input onto a bounding box of
diameter 1 (see :class:`Similarity`).
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import DegenerateBisector, EmptyInput, InvalidParameter

TAU = 1e-9
TAU_NORM = 1e-12


def as_points(pts):
    """Return ``pts`` as a finite ``(n, 2)`` float array."""
    arr = np.asarray(pts, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, 2)
    arr = arr.reshape(-1, 2)
    if not np.all(np.isfinite(arr)):
        raise InvalidParameter("point coordinates must be finite")
    return arr


def dedupe(pts):
    """Drop exact duplicate rows, keeping first occurrences in order."""
    arr = as_points(pts)
    if len(arr) == 0:
        return arr
    _, idx = np.unique(arr, axis=0, return_index=True)
    return arr[np.sort(idx)]


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def scale(a, s):
    return (a[0] * s, a[1] * s)


def norm(a):
    return math.hypot(a[0], a[1])


def perp(a):
    """Rotate by +90 degrees."""
    return (-a[1], a[0])


def unit(v):
    n = math.hypot(v[0], v[1])
    if n == 0.0 or not math.isfinite(n):
        raise InvalidParameter(f"cannot normalize vector {v!r}")
    return (v[0] / n, v[1] / n)


def direction(theta):
    return (math.cos(theta), math.sin(theta))


def orient(a, b, c, exact=False):
    """Twice the signed area of triangle abc (>0 when c is left of a->b)."""
    if exact:
        a, b, c = ([Fraction(v) for v in p] for p in (a, b, c))
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _canonical_normal(nx, ny):
    # dy > 0, or dy == 0 and dx > 0
    return ny > 0 or (ny == 0 and nx > 0)


@dataclass(frozen=True)
class Line:
    """The locus ``{p : <normal, p> = offset}`` with a canonical normal sign."""

    normal: tuple
    offset: float

    def __post_init__(self):
        nx, ny = self.normal
        if abs(math.hypot(nx, ny) - 1.0) > TAU_NORM * 10:
            raise InvalidParameter("line normal must be a unit vector")
        if not _canonical_normal(nx, ny):
            object.__setattr__(self, "normal", (-nx + 0.0, -ny + 0.0))
            object.__setattr__(self, "offset", -self.offset + 0.0)

    @classmethod
    def through(cls, p, q):
        d = unit(sub(q, p))
        n = perp(d)
        return cls(n, dot(n, p))

    @classmethod
    def with_direction(cls, p, d):
        n = perp(unit(d))
        return cls(n, dot(n, p))

    @property
    def direction(self):
        return (self.normal[1], -self.normal[0])

    def value(self, p):
        return dot(self.normal, p) - self.offset


@dataclass(frozen=True)
class Ray:
    origin: tuple
    dir: tuple


@dataclass(frozen=True)
class Strip:
    """Region ``{p : lo <= <normal, p> <= hi}``."""

    normal: tuple
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidParameter("strip requires lo <= hi")

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def axis(self):
        """Unit direction of the strip's boundary lines."""
        return (self.normal[1], -self.normal[0])

    def canonical(self):
        nx, ny = self.normal
        if _canonical_normal(nx, ny):
            return self
        return Strip((-nx + 0.0, -ny + 0.0), -self.hi + 0.0, -self.lo + 0.0)

    def lines(self):
        return Line(self.normal, self.lo), Line(self.normal, self.hi)

    def contains(self, p, tol=TAU):
        v = dot(self.normal, p)
        return self.lo - tol <= v <= self.hi + tol

    def contains_all(self, pts, tol=TAU):
        v = as_points(pts) @ np.asarray(self.normal)
        return bool(np.all((v >= self.lo - tol) & (v <= self.hi + tol)))

    def expanded(self, factor):
        """Scale the width about the median line."""
        mid = 0.5 * (self.lo + self.hi)
        half = 0.5 * self.width * factor
        return Strip(self.normal, mid - half, mid + half)


@dataclass(frozen=True)
class Halfplane:
    """Closed halfplane ``{p : <normal, p> >= offset}``; normal need not be canonical."""

    normal: tuple
    offset: float

    @classmethod
    def left_of(cls, a, b):
        """Points left of (or on) the directed line a->b."""
        n = perp(unit(sub(b, a)))
        return cls(n, dot(n, a))

    @classmethod
    def everything(cls):
        return cls((0.0, 1.0), -math.inf)

    def mask(self, pts, tol=TAU):
        return as_points(pts) @ np.asarray(self.normal) >= self.offset - tol


def side_of(line, p, tol=TAU, exact=False):
    """Sign of ``<normal, p> - offset`` with a dead band of half-width ``tol``.

    With ``exact=True`` the residual is evaluated in rational arithmetic on the
    (exactly representable) inputs and the sign is returned without a band.
    """
    if exact:
        r = (Fraction(line.normal[0]) * Fraction(p[0]) + Fraction(line.normal[1]) * Fraction(p[1])
             - Fraction(line.offset))
        return (r > 0) - (r < 0)
    r = dot(line.normal, p) - line.offset
    if r > tol:
        return 1
    if r < -tol:
        return -1
    return 0


def dist_point_line(p, line):
    return abs(dot(line.normal, p) - line.offset)


def angle_bisector(y, r1, r2, tol=TAU):
    s = (r1[0] + r2[0], r1[1] + r2[1])
    if math.hypot(*s) <= tol:
        raise DegenerateBisector("bisector of opposite rays is undefined")
    return Ray(tuple(y), unit(s))


def strip_through(normal, pts):
    arr = as_points(pts)
    if len(arr) == 0:
        raise EmptyInput("strip_through needs at least one point")
    v = arr @ np.asarray(normal, dtype=float)
    return Strip(tuple(normal), float(v.min()), float(v.max()))


def line_intersection(n1, c1, n2, c2):
    """Intersection of ``<n1,p>=c1`` and ``<n2,p>=c2``; None if parallel."""
    det = n1[0] * n2[1] - n1[1] * n2[0]
    if abs(det) < 1e-15:
        return None
    return ((c1 * n2[1] - c2 * n1[1]) / det, (n1[0] * c2 - n2[0] * c1) / det)


def diameter(pts):
    """Diameter of the bounding box (the normalization scale)."""
    arr = as_points(pts)
    if len(arr) == 0:
        return 0.0
    return float(np.hypot(*(arr.max(axis=0) - arr.min(axis=0))))


@dataclass(frozen=True)
class Similarity:
    """Translation plus uniform scaling taking a point set onto a unit-diameter box.

    Uniform scaling keeps every width proportional, so solving in normalized
    coordinates and mapping back is exact up to rounding.
    """

    center: tuple
    factor: float

    @classmethod
    def fit(cls, pts):
        arr = as_points(pts)
        lo, hi = arr.min(axis=0), arr.max(axis=0)
        d = float(np.hypot(*(hi - lo)))
        c = 0.5 * (lo + hi)
        return cls((float(c[0]), float(c[1])), 1.0 / d if d > 0 else 1.0)

    def forward(self, pts):
        return (as_points(pts) - np.asarray(self.center)) * self.factor

    def point_back(self, p):
        return (p[0] / self.factor + self.center[0], p[1] / self.factor + self.center[1])

    def length_back(self, w):
        return w / self.factor
