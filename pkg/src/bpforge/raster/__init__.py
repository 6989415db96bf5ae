"""Binary-image geometry kernel.

Every primitive the classification DSL exposes lives here: binarization,
connected components, boundary tracing, shape measures, stroke length and
approximate collinearity. All types are immutable after construction and
all operations are pure.
"""

from ._backend import kernel_backend
from .components import Box, Component, find_components
from .contours import Contour, trace_contour
from .image import DEFAULT_THRESHOLD, BinaryImage, binarize
from .measures import METRICS, approx_collinear, measure, total_ink_length

__all__ = [
    "BinaryImage",
    "Box",
    "Component",
    "Contour",
    "DEFAULT_THRESHOLD",
    "METRICS",
    "approx_collinear",
    "binarize",
    "find_components",
    "kernel_backend",
    "measure",
    "total_ink_length",
    "trace_contour",
]
