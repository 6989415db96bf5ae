"""Builtin catalog for the DSL: names, signatures, and evaluation glue.

One table drives the parser's name resolution, the validator's type
checks, the interpreter, and the rendered grammar help, so the four can
never drift apart.
"""

import math

from ..raster import (
    METRICS,
    approx_collinear,
    find_components,
    measure,
    total_ink_length,
    trace_contour,
)

# Value type tags
IMAGE = "image"
COMPONENT = "component"
COMPONENT_LIST = "component_list"
CONTOUR = "contour"
POINT = "point"
POINT_LIST = "point_list"
NUM = "num"
BOOL = "bool"
LABEL = "label"

METRIC_ARG = "metric"  # pseudo-type: measure's second argument

LIST_ELEMENT = {COMPONENT_LIST: COMPONENT, POINT_LIST: POINT}

# name -> (arg types, return type, description for the grammar help).
# An argument given as a tuple accepts any of the listed types.
BUILTINS = {
    "components": ((IMAGE,), COMPONENT_LIST, "connected ink regions of the panel, top-to-bottom then left-to-right"),
    "size": (((COMPONENT_LIST, POINT_LIST),), NUM, "number of elements in a list"),
    "contour": ((COMPONENT,), CONTOUR, "outer boundary of one region"),
    "measure": (
        (CONTOUR, METRIC_ARG),
        NUM,
        "scalar shape property of a boundary; metric is one of: " + ", ".join(METRICS),
    ),
    "pixel_count": ((COMPONENT,), NUM, "ink pixels in one region"),
    "bbox_left": ((COMPONENT,), NUM, "leftmost x of a region's bounding box"),
    "bbox_top": ((COMPONENT,), NUM, "topmost y of a region's bounding box"),
    "bbox_width": ((COMPONENT,), NUM, "bounding-box width of a region"),
    "bbox_height": ((COMPONENT,), NUM, "bounding-box height of a region"),
    "centroid": ((COMPONENT,), POINT, "center of mass of a region"),
    "centroids": ((IMAGE,), POINT_LIST, "centers of mass of every region in the panel"),
    "point_x": ((POINT,), NUM, "x coordinate of a 2-D location"),
    "point_y": ((POINT,), NUM, "y coordinate of a 2-D location"),
    "dist": ((POINT, POINT), NUM, "Euclidean distance between two locations"),
    "approx_collinear": (
        (POINT_LIST, NUM),
        BOOL,
        "true when some location lies within the given threshold of the line through two others",
    ),
    "total_ink_length": ((IMAGE,), NUM, "summed stroke length, normalized by the panel diagonal"),
    "image_width": ((IMAGE,), NUM, "panel width in pixels"),
    "image_height": ((IMAGE,), NUM, "panel height in pixels"),
    "image_diagonal": ((IMAGE,), NUM, "panel diagonal in pixels"),
    "abs": ((NUM,), NUM, "magnitude of a number"),
    "min": ((NUM, NUM), NUM, "smaller of two numbers"),
    "max": ((NUM, NUM), NUM, "larger of two numbers"),
    "sqrt": ((NUM,), NUM, "square root (negative input is a runtime error)"),
}


def _impl_sqrt(x):
    if x < 0:
        raise ValueError(f"sqrt of negative value {x}")
    return math.sqrt(x)


IMPLS = {
    "components": lambda img: tuple(find_components(img, connectivity=8)),
    "size": lambda xs: len(xs),
    "contour": trace_contour,
    "measure": measure,
    "pixel_count": lambda c: c.pixel_count,
    "bbox_left": lambda c: c.bbox.x,
    "bbox_top": lambda c: c.bbox.y,
    "bbox_width": lambda c: c.bbox.w,
    "bbox_height": lambda c: c.bbox.h,
    "centroid": lambda c: c.centroid(),
    "centroids": lambda img: tuple(c.centroid() for c in find_components(img, connectivity=8)),
    "point_x": lambda p: p[0],
    "point_y": lambda p: p[1],
    "dist": lambda a, b: math.hypot(a[0] - b[0], a[1] - b[1]),
    "approx_collinear": approx_collinear,
    "total_ink_length": total_ink_length,
    "image_width": lambda img: img.width,
    "image_height": lambda img: img.height,
    "image_diagonal": lambda img: img.diagonal,
    "abs": abs,
    "min": min,
    "max": max,
    "sqrt": _impl_sqrt,
}

MAX_BINDERS = 3
