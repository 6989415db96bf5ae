"""Binary panel images and binarization."""

import hashlib

import numpy as np

from ..errors import InvalidImage

DEFAULT_THRESHOLD = 127


class BinaryImage:
    """Immutable row-major foreground mask of a panel (foreground = ink).

    Primitive results (components, stroke length) are cached per instance;
    since the bits never change, every operation stays pure.
    """

    def __init__(self, bits: np.ndarray):
        arr = np.ascontiguousarray(np.asarray(bits, dtype=bool))
        if arr.ndim != 2 or arr.size == 0:
            raise InvalidImage(f"expected a nonempty 2-D mask, got shape {arr.shape}")
        arr.setflags(write=False)
        self._bits = arr
        self._cache: dict = {}

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def width(self) -> int:
        return self._bits.shape[1]

    @property
    def height(self) -> int:
        return self._bits.shape[0]

    @property
    def diagonal(self) -> float:
        return float(np.hypot(self.width, self.height))

    def ink_count(self) -> int:
        return int(self._bits.sum())

    def digest(self) -> str:
        """Stable content hash; used as a cache key for oracle transduction."""
        head = f"{self.width}x{self.height}:".encode()
        return hashlib.sha256(head + np.packbits(self._bits).tobytes()).hexdigest()

    def to_gray(self) -> np.ndarray:
        """Render as uint8 grayscale with ink dark (0) on white (255)."""
        return np.where(self._bits, 0, 255).astype(np.uint8)

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return self._bits.shape == other._bits.shape and bool(np.array_equal(self._bits, other._bits))

    __hash__ = None  # structural equality; key caches by digest() instead

    def __repr__(self):
        return f"BinaryImage({self.width}x{self.height}, ink={self.ink_count()})"


def binarize(gray: np.ndarray, threshold: int = DEFAULT_THRESHOLD) -> BinaryImage:
    """Threshold a grayscale raster with dark-ink inversion.

    A pixel is foreground iff its intensity is strictly below ``threshold``.
    """
    arr = np.asarray(gray)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidImage(f"expected a nonempty 2-D grayscale raster, got shape {arr.shape}")
    return BinaryImage(arr < threshold)
