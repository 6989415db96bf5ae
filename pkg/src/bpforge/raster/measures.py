"""Scalar shape measures and point-set predicates.

Conventions (documented so tests can be exact):

* area           -- pixels enclosed by the outer boundary, holes included;
                    computed by 4-connected background flood on the traced
                    component, or by Pick's theorem on hand-built contours.
* perimeter      -- closed chain-code length of the boundary.
* circularity    -- 4*pi*area / perimeter**2.
* elongation     -- sqrt of the eigenvalue ratio of the pixel-coordinate
                    covariance, each eigenvalue widened by 1/12 for the
                    unit extent of a pixel; an axis-aligned w x h rectangle
                    measures exactly w/h.
* centroid_x/_y  -- first moments of the component's pixels.
* hull_area      -- lattice points inside or on the convex hull of the
                    boundary, via Pick's theorem.
* convexity      -- area / hull_area (<= 1 by construction).
"""

import math

import numpy as np

from ..errors import DegenerateGeometry, InvalidInput
from ._backend import kernels
from .components import find_components
from .contours import Contour, trace_contour
from .image import BinaryImage

METRICS = (
    "area",
    "perimeter",
    "circularity",
    "elongation",
    "centroid_x",
    "centroid_y",
    "hull_area",
    "convexity",
)


def measure(c: Contour, metric: str) -> float:
    if metric not in METRICS:
        raise InvalidInput(f"unknown metric {metric!r}; valid metrics: {', '.join(METRICS)}")
    if metric == "perimeter":
        return c.arc_length(closed=True)
    if metric == "area":
        return float(_area(c))
    if metric == "circularity":
        per = c.arc_length(closed=True)
        if per == 0.0:
            raise DegenerateGeometry("circularity undefined for zero-perimeter contour")
        return 4.0 * math.pi * _area(c) / (per * per)
    if metric == "elongation":
        return _elongation(c)
    if metric in ("centroid_x", "centroid_y"):
        cx, cy = _centroid(c)
        return cx if metric == "centroid_x" else cy
    if metric == "hull_area":
        return float(_hull_area(c))
    # convexity
    hull = _hull_area(c)
    if hull == 0:
        raise DegenerateGeometry("convexity undefined for empty hull")
    return float(_area(c)) / hull


def _area(c: Contour) -> int:
    if c.source is not None:
        cached = c.source._cache.get("enclosed")
        if cached is None:
            cached = kernels.count_enclosed(c.source.mask)
            c.source._cache["enclosed"] = cached
        return cached
    return _lattice_count(c.points)


def _centroid(c: Contour) -> tuple[float, float]:
    if c.source is not None:
        return c.source.centroid()
    pts = np.asarray(c.points, dtype=float)
    return float(pts[:, 0].mean()), float(pts[:, 1].mean())


def _elongation(c: Contour) -> float:
    if c.source is not None:
        xs, ys = c.source.pixel_coords()
    else:
        pts = np.asarray(c.points, dtype=float)
        xs, ys = pts[:, 0], pts[:, 1]
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    vxx = xs.var() + 1.0 / 12.0
    vyy = ys.var() + 1.0 / 12.0
    vxy = ((xs - xs.mean()) * (ys - ys.mean())).mean()
    tr, det = vxx + vyy, vxx * vyy - vxy * vxy
    disc = math.sqrt(max(tr * tr / 4.0 - det, 0.0))
    lam_max = tr / 2.0 + disc
    lam_min = max(tr / 2.0 - disc, 1e-12)
    return math.sqrt(lam_max / lam_min)


def _convex_hull(points) -> list[tuple[int, int]]:
    """Andrew's monotone chain; returns CCW hull vertices, no repeats."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _lattice_count(polygon) -> int:
    """Lattice points inside or on a simple lattice polygon (Pick's theorem)."""
    verts = list(polygon)
    n = len(verts)
    if n == 1:
        return 1
    if n == 2:
        (x0, y0), (x1, y1) = verts
        return math.gcd(abs(x1 - x0), abs(y1 - y0)) + 1
    twice_area = 0
    boundary = 0
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        twice_area += x0 * y1 - x1 * y0
        boundary += math.gcd(abs(x1 - x0), abs(y1 - y0))
    interior = (abs(twice_area) - boundary) // 2 + 1  # Pick: A = I + B/2 - 1
    return interior + boundary


def _hull_area(c: Contour) -> int:
    if c.source is not None:
        cache = c.source._cache
        cached = cache.get("hull_area")
        if cached is not None:
            return cached
    hull = _convex_hull(c.points)
    count = _lattice_count(hull)
    if c.source is not None:
        c.source._cache["hull_area"] = count
    return count


def total_ink_length(img: BinaryImage) -> float:
    """Total stroke length, normalized by the image diagonal.

    Each component contributes half its open boundary arc length: a thin
    stroke's boundary runs out and back, so halving recovers the stroke
    length.
    """
    cached = img._cache.get("ink_length")
    if cached is not None:
        return cached
    total = 0.0
    for comp in find_components(img, connectivity=8):
        total += trace_contour(comp).arc_length(closed=False) / 2.0
    result = total / img.diagonal
    img._cache["ink_length"] = result
    return result


def approx_collinear(points, distance_threshold: float) -> bool:
    """True iff some point lies strictly within ``distance_threshold`` of the
    line through two other points. Fewer than 3 points is False, not an error.
    """
    if distance_threshold <= 0:
        raise InvalidInput(f"distance_threshold must be positive, got {distance_threshold}")
    pts = list(points)
    if len(pts) < 3:
        return False
    xs = np.ascontiguousarray([p[0] for p in pts], dtype=np.float64)
    ys = np.ascontiguousarray([p[1] for p in pts], dtype=np.float64)
    return bool(kernels.has_collinear_triple(xs, ys, float(distance_threshold)))
