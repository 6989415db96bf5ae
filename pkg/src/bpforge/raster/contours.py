"""Outer boundary tracing."""

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .components import Component

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Contour:
    """Ordered boundary pixels; consecutive points are 8-adjacent.

    ``source`` links back to the traced component so pixel-exact area
    measures are available; hand-built contours may leave it None.
    """

    points: tuple[tuple[int, int], ...]
    closed: bool = True
    source: Component | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.points:
            raise ValueError("a contour needs at least one point")

    def arc_length(self, closed: bool | None = None) -> float:
        """Chain-code length: 1 per axis step, sqrt(2) per diagonal step.

        With ``closed`` the step back to the start is included.
        """
        pts = self.points
        if len(pts) == 1:
            return 0.0
        if closed is None:
            closed = self.closed
        total = 0.0
        n = len(pts)
        last = n if closed else n - 1
        for i in range(last):
            x0, y0 = pts[i]
            x1, y1 = pts[(i + 1) % n]
            total += _SQRT2 if (x0 != x1 and y0 != y1) else 1.0
        return total


def trace_contour(c: Component) -> Contour:
    """Trace the outer boundary of a component.

    Moore-neighbor tracing with Jacob's stopping criterion, walking
    counter-clockwise in screen coordinates from the top-left boundary
    pixel. Holes are ignored (outer boundary only).
    """
    mask = c.mask
    ys, xs = np.nonzero(mask)
    first = int(np.lexsort((xs, ys))[0])  # row-major first pixel
    raw = kernels.trace_boundary(mask, int(xs[first]), int(ys[first]))
    pts = tuple((int(x) + c.bbox.x, int(y) + c.bbox.y) for x, y in raw)
    return Contour(points=pts, closed=True, source=c)
