"""Pure-Python raster kernels.

Fallback implementations of the hot loops, selected at import time when the
compiled extension is unavailable (see ``_backend``). Both backends must
produce bit-identical results; the benchmark in ``benchmarks/`` asserts
this on random inputs.
"""

import math

import numpy as np

BACKEND_NAME = "python"

# Moore neighborhood in counter-clockwise screen order (x right, y down),
# starting west: W, SW, S, SE, E, NE, N, NW.
_MOORE = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))


def label_image(bits, connectivity):
    """Label 4- or 8-connected foreground regions.

    Returns an int32 array of the same shape: 0 for background, 1..n for
    components in row-major first-pixel order.
    """
    h, w = bits.shape
    labels = np.zeros((h, w), dtype=np.int32)
    if connectivity == 8:
        neigh = _MOORE
    else:
        neigh = ((-1, 0), (0, 1), (1, 0), (0, -1))
    current = 0
    stack = []
    for y in range(h):
        for x in range(w):
            if bits[y, x] == 0 or labels[y, x] != 0:
                continue
            current += 1
            labels[y, x] = current
            stack.append((x, y))
            while stack:
                cx, cy = stack.pop()
                for dx, dy in neigh:
                    nx, ny = cx + dx, cy + dy
                    if 0 <= nx < w and 0 <= ny < h and bits[ny, nx] != 0 and labels[ny, nx] == 0:
                        labels[ny, nx] = current
                        stack.append((nx, ny))
    return labels, current


def trace_boundary(mask, start_x, start_y):
    """Moore boundary trace of the region containing (start_x, start_y).

    The start pixel must be the region's row-major first foreground pixel
    (top row, then leftmost), which guarantees its west neighbor is
    background. The walk visits boundary pixels counter-clockwise in screen
    coordinates and stops when the first step's state recurs (Jacob's
    stopping criterion on the (pixel, backtrack) pair).

    Returns an (n, 2) int64 array of (x, y) points; a lone pixel yields a
    single point.
    """
    h, w = mask.shape

    def is_ink(x, y):
        return 0 <= x < w and 0 <= y < h and mask[y, x] != 0

    points = [(start_x, start_y)]
    cx, cy = start_x, start_y
    back_dir = 0  # direction index of the backtrack pixel relative to current
    first_state = None
    for _ in range(4 * int(mask.sum()) + 8):
        found = -1
        found_step = 0
        for step in range(1, 9):
            d = (back_dir + step) % 8
            dx, dy = _MOORE[d]
            if is_ink(cx + dx, cy + dy):
                found = d
                found_step = step
                break
        if found < 0:
            break  # isolated pixel
        # Backtrack becomes the neighbor checked just before the ink pixel
        # (or the old backtrack when the very first neighbor was ink),
        # re-expressed as a direction from the new current pixel.
        prev = (back_dir + found_step - 1) % 8
        nx, ny = cx + _MOORE[found][0], cy + _MOORE[found][1]
        bdx = (cx + _MOORE[prev][0]) - nx
        bdy = (cy + _MOORE[prev][1]) - ny
        cx, cy = nx, ny
        back_dir = _dir_index(bdx, bdy)
        state = (cx, cy, back_dir)
        if first_state is None:
            first_state = state
        elif state == first_state:
            break
        points.append((cx, cy))
    if len(points) > 1 and points[-1] == points[0]:
        points.pop()
    return np.asarray(points, dtype=np.int64)


def _dir_index(dx, dy):
    for i, (mx, my) in enumerate(_MOORE):
        if mx == dx and my == dy:
            return i
    raise ValueError(f"not a Moore step: ({dx}, {dy})")


def count_enclosed(mask):
    """Count pixels inside or on the outer boundary of ``mask``.

    Holes count as enclosed: the background is flooded 4-connected from a
    one-pixel pad ring, and anything it cannot reach is interior. The 4-/8-
    connectivity duality guarantees the flood cannot leak through an
    8-connected boundary.
    """
    h, w = mask.shape
    reach = np.zeros((h + 2, w + 2), dtype=np.uint8)
    stack = [(0, 0)]
    reach[0, 0] = 1
    while stack:
        px, py = stack.pop()
        for dx, dy in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            nx, ny = px + dx, py + dy
            if 0 <= nx < w + 2 and 0 <= ny < h + 2 and reach[ny, nx] == 0:
                inside = 0 <= nx - 1 < w and 0 <= ny - 1 < h
                if inside and mask[ny - 1, nx - 1] != 0:
                    continue
                reach[ny, nx] = 1
                stack.append((nx, ny))
    return int(h * w - int(reach[1 : h + 1, 1 : w + 1].sum()))


def has_collinear_triple(xs, ys, threshold):
    """True iff some point lies within ``threshold`` of a line through two others.

    Mirrors the normalized-line-equation formulation: for each ordered pair
    (i < j), a pair closer than 1e-6 in x is treated as a vertical line.
    The comparison is strict.
    """
    n = len(xs)
    if n < 3:
        return False
    for i in range(n):
        x1, y1 = xs[i], ys[i]
        for j in range(i + 1, n):
            x2, y2 = xs[j], ys[j]
            if abs(x2 - x1) < 1e-6:
                a, b, c = 1.0, 0.0, -x1
            else:
                slope = (y2 - y1) / (x2 - x1)
                a, b, c = slope, -1.0, y1 - slope * x1
            norm = math.sqrt(a * a + b * b)
            a, b, c = a / norm, b / norm, c / norm
            for k in range(n):
                if k == i or k == j:
                    continue
                if abs(a * xs[k] + b * ys[k] + c) < threshold:
                    return True
    return False
