"""Connected components and bounding boxes."""

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .image import BinaryImage


@dataclass(frozen=True)
class Box:
    x: int
    y: int
    w: int
    h: int

    @property
    def right(self) -> int:
        return self.x + self.w

    @property
    def bottom(self) -> int:
        return self.y + self.h


class Component:
    """One maximal connected set of foreground pixels.

    Holds a copy of its bounding-box mask so measures stay valid even if
    the source image is garbage collected.
    """

    def __init__(self, mask: np.ndarray, bbox: Box):
        mask = np.ascontiguousarray(mask, dtype=np.uint8)
        mask.setflags(write=False)
        self.mask = mask  # bbox-local, uint8
        self.bbox = bbox
        self.pixel_count = int(mask.sum())
        self._cache: dict = {}

    def pixel_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Image-frame (xs, ys) of the component's pixels."""
        ys, xs = np.nonzero(self.mask)
        return xs + self.bbox.x, ys + self.bbox.y

    def centroid(self) -> tuple[float, float]:
        xs, ys = self.pixel_coords()
        return float(xs.mean()), float(ys.mean())

    def __repr__(self):
        return f"Component({self.pixel_count}px at {self.bbox})"


def find_components(img: BinaryImage, connectivity: int = 8) -> list[Component]:
    """Partition foreground into components, ordered by (min-y, min-x) of bbox."""
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    key = ("components", connectivity)
    cached = img._cache.get(key)
    if cached is not None:
        return cached

    bits = np.ascontiguousarray(img.bits.astype(np.uint8))
    labels, n = kernels.label_image(bits, connectivity)
    comps = []
    for lab in range(1, n + 1):
        ys, xs = np.nonzero(labels == lab)
        x0, y0 = int(xs.min()), int(ys.min())
        x1, y1 = int(xs.max()), int(ys.max())
        bbox = Box(x0, y0, x1 - x0 + 1, y1 - y0 + 1)
        mask = (labels[y0 : y1 + 1, x0 : x1 + 1] == lab).astype(np.uint8)
        comps.append(Component(mask, bbox))
    comps.sort(key=lambda c: (c.bbox.y, c.bbox.x))
    img._cache[key] = comps
    return comps
