"""Panel file decoding (PNG and PGM).

Decoding is confined here so the geometry kernel stays format-free.
Color or anti-aliased sources are converted to grayscale by luminance
before thresholding.
"""

import numpy as np
from PIL import Image

from .image import DEFAULT_THRESHOLD, BinaryImage, binarize


def load_gray(path) -> np.ndarray:
    """Decode a PNG or PGM panel to a uint8 luminance raster."""
    with Image.open(path) as im:
        return np.asarray(im.convert("L"), dtype=np.uint8)


def load_panel(path, threshold: int = DEFAULT_THRESHOLD) -> BinaryImage:
    return binarize(load_gray(path), threshold)


def save_panel(img: BinaryImage, path) -> None:
    """Write a binary image as an 8-bit panel (ink black on white)."""
    Image.fromarray(img.to_gray(), mode="L").save(path)
