"""Reading point sets, writing results as JSON or SVG."""

from dataclasses import asdict, dataclass, field
import json
import math
from pathlib import Path

import numpy as np

from .errors import EmptyInput, ParseError
from .geom import dedupe
from .hull import convex_hull

SCHEMA = "vwidth.result/1"


def _parse_csv(text):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.replace(";", ",").split(",")]
        if len(parts) != 2:
            raise ParseError(f"expected 'x,y', got {raw.strip()!r}", line=lineno)
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(f"not a number in {raw.strip()!r}", line=lineno) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError("coordinates must be finite", line=lineno)
        rows.append((x, y))
    return rows


def _parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    pts = doc.get("points") if isinstance(doc, dict) else None
    if not isinstance(pts, list):
        raise ParseError("JSON input needs a top-level 'points' list")
    rows = []
    for i, p in enumerate(pts):
        if not (isinstance(p, (list, tuple)) and len(p) == 2):
            raise ParseError(f"points[{i}]: expected [x, y]")
        try:
            x, y = float(p[0]), float(p[1])
        except (TypeError, ValueError):
            raise ParseError(f"points[{i}]: not a number") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ParseError(f"points[{i}]: coordinates must be finite")
        rows.append((x, y))
    return rows


def parse_points(path, fmt=None, report=None):
    """Read a CSV ('x,y' per line, '#' comments) or JSON ({"points": [...]}) file.

    Duplicate points are dropped; when ``report`` is a dict it receives the
    counts read and dropped.
    """
    path = Path(path)
    text = path.read_text()
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    return parse_text(text, fmt, report)


def parse_text(text, fmt="csv", report=None):
    if fmt not in ("csv", "json"):
        raise ParseError(f"unknown input format {fmt!r}")
    rows = _parse_csv(text) if fmt == "csv" else _parse_json(text)
    if not rows:
        raise EmptyInput("no points in input")
    pts = dedupe(np.array(rows, dtype=float))
    if report is not None:
        report.update(read=len(rows), duplicates=len(rows) - len(pts))
    return pts


def write_points(pts, fmt="csv", meta=None):
    pts = np.asarray(pts, float)
    if fmt == "json":
        doc = {"points": pts.tolist()}
        if meta:
            doc["meta"] = meta
        return json.dumps(doc, indent=1)
    head = "".join(f"# {k}: {v}\n" for k, v in (meta or {}).items())
    return head + "".join(f"{x!r},{y!r}\n" for x, y in pts.tolist())


@dataclass
class ResultRecord:
    algorithm: str
    width: float
    apex_inner: tuple
    apex_outer: tuple
    dir_left: tuple
    dir_right: tuple
    balanced: bool = False
    canonical_type: str = None
    guarantee: float = 1.0
    seconds: float = 0.0
    candidates_examined: int = 0
    n_points: int = 0
    optima: int = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_report(cls, rep, seconds=0.0, n_points=0):
        v = rep.best
        kind = rep.canonical_type
        return cls(rep.algorithm, float(rep.width), tuple(v.x), tuple(v.y), tuple(v.dir_left),
                   tuple(v.dir_right), bool(rep.balanced), getattr(kind, "value", kind),
                   rep.guarantee, float(seconds), int(rep.candidates_examined), int(n_points),
                   len(rep.optima) if rep.optima is not None else None,
                   {k: v for k, v in rep.stats.items() if isinstance(v, (int, float, str, bool))})

    def vshape(self):
        from .vshape import VShape
        return VShape(self.apex_inner, self.apex_outer, self.dir_left, self.dir_right)

    def to_json(self):
        doc = {"schema": SCHEMA, **asdict(self)}
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        if doc.pop("schema", None) != SCHEMA:
            raise ParseError("unknown result schema")
        for k in ("apex_inner", "apex_outer", "dir_left", "dir_right"):
            doc[k] = tuple(doc[k])
        return cls(**doc)


# ---------------------------------------------------------------------------
# SVG


def _clip(poly, box):
    """Sutherland-Hodgman clip of a convex polygon to an axis-aligned box."""
    x0, y0, x1, y1 = box
    edges = [(lambda p: p[0] >= x0, 0, x0), (lambda p: p[0] <= x1, 0, x1),
             (lambda p: p[1] >= y0, 1, y0), (lambda p: p[1] <= y1, 1, y1)]
    out = list(poly)
    for inside, axis, val in edges:
        src, out = out, []
        for i, cur in enumerate(src):
            prev = src[i - 1]
            if inside(cur):
                if not inside(prev):
                    out.append(_cut(prev, cur, axis, val))
                out.append(cur)
            elif inside(prev):
                out.append(_cut(prev, cur, axis, val))
        if not out:
            break
    return out


def _cut(p, q, axis, val):
    t = (val - p[axis]) / (q[axis] - p[axis])
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def arm_polygons(v, box):
    """Each arm as a polygon clipped to ``box`` (x0, y0, x1, y1)."""
    reach = 4 * math.hypot(box[2] - box[0], box[3] - box[1]) + math.hypot(v.y[0] - v.x[0], v.y[1] - v.x[1])
    polys = []
    for d in (v.dir_left, v.dir_right):
        far_x = (v.x[0] + reach * d[0], v.x[1] + reach * d[1])
        far_y = (v.y[0] + reach * d[0], v.y[1] + reach * d[1])
        polys.append(_clip([v.x, v.y, far_y, far_x], box))
    return polys


def emit_result(rec, pts, fmt="json"):
    """Serialize a result: the versioned JSON record, or an SVG drawing."""
    if fmt == "json":
        return rec.to_json().encode()
    if fmt != "svg":
        raise ValueError(f"unknown output format {fmt!r}")
    P = np.asarray(pts, float)
    lo, hi = P.min(axis=0), P.max(axis=0)
    pad = 0.2 * (hi - lo) + 2 * rec.width
    pad = np.maximum(pad, 1e-9 + 0.05 * max(float((hi - lo).max()), 1.0))
    x0, y0 = lo - pad
    x1, y1 = hi + pad
    box = (float(x0), float(y0), float(x1), float(y1))
    size = 600.0
    s = size / max(x1 - x0, y1 - y0)

    def tr(p):
        return f"{(p[0] - x0) * s:.4f},{(y1 - p[1]) * s:.4f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{(x1 - x0) * s:.1f}" height="{(y1 - y0) * s:.1f}">',
           f'<title>{rec.algorithm} width {rec.width:.6g}</title>']
    for i, poly in enumerate(arm_polygons(rec.vshape(), box)):
        out.append(f'<polygon class="arm" data-arm="{i}" fill="#4a90d9" fill-opacity="0.35" '
                   f'stroke="#1f4e79" stroke-width="1" points="{" ".join(tr(p) for p in poly)}"/>')
    if len(P) >= 3:
        h = convex_hull(P)
        out.append(f'<polygon class="hull" fill="none" stroke="#888" stroke-dasharray="4 3" '
                   f'points="{" ".join(tr(p) for p in h.vertices)}"/>')
    r = max(1.0, min(3.0, 600.0 / math.sqrt(len(P) + 1) / 4))
    if len(P) > 20000:
        P = P[np.random.default_rng(0).choice(len(P), 20000, replace=False)]
    out += [f'<circle cx="{(x - x0) * s:.3f}" cy="{(y1 - y) * s:.3f}" r="{r:.2f}" fill="#c0392b"/>'
            for x, y in P.tolist()]
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()
