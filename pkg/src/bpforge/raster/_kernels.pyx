# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled raster kernels.

Mirrors ``_kernels_py`` exactly; the two backends must produce
bit-identical results on every input.
"""

from libc.math cimport fabs, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"

cdef int[8] _MX = [-1, -1, 0, 1, 1, 1, 0, -1]
cdef int[8] _MY = [0, 1, 1, 1, 0, -1, -1, -1]


def label_image(const cnp.uint8_t[:, ::1] bits, int connectivity):
    """Label 4- or 8-connected foreground regions (row-major first-pixel order)."""
    cdef int h = bits.shape[0]
    cdef int w = bits.shape[1]
    cdef cnp.ndarray[cnp.int32_t, ndim=2] labels_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] stack_arr = np.empty(h * w, dtype=np.int64)
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef int current = 0
    cdef int top, x, y, cx, cy, nx, ny, k, nneigh
    cdef int[8] dx
    cdef int[8] dy

    if connectivity == 8:
        nneigh = 8
        for k in range(8):
            dx[k] = _MX[k]
            dy[k] = _MY[k]
    else:
        nneigh = 4
        dx[0] = -1; dy[0] = 0
        dx[1] = 0;  dy[1] = 1
        dx[2] = 1;  dy[2] = 0
        dx[3] = 0;  dy[3] = -1

    for y in range(h):
        for x in range(w):
            if bits[y, x] == 0 or labels[y, x] != 0:
                continue
            current += 1
            labels[y, x] = current
            top = 0
            stack[top] = <cnp.int64_t>y * w + x
            top += 1
            while top > 0:
                top -= 1
                cx = <int>(stack[top] % w)
                cy = <int>(stack[top] // w)
                for k in range(nneigh):
                    nx = cx + dx[k]
                    ny = cy + dy[k]
                    if 0 <= nx < w and 0 <= ny < h and bits[ny, nx] != 0 and labels[ny, nx] == 0:
                        labels[ny, nx] = current
                        stack[top] = <cnp.int64_t>ny * w + nx
                        top += 1
    return labels_arr, current


cdef inline int _dir_index_c(int dx, int dy) except -1:
    cdef int i
    for i in range(8):
        if _MX[i] == dx and _MY[i] == dy:
            return i
    raise ValueError("not a Moore step")


def trace_boundary(const cnp.uint8_t[:, ::1] mask, int start_x, int start_y):
    """Moore boundary trace; see the pure-Python twin for the contract."""
    cdef int h = mask.shape[0]
    cdef int w = mask.shape[1]
    cdef long long total = 0
    cdef int i, j
    for i in range(h):
        for j in range(w):
            if mask[i, j] != 0:
                total += 1
    cdef long long limit = 4 * total + 8
    cdef cnp.ndarray[cnp.int64_t, ndim=2] pts_arr = np.empty((limit + 1, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] pts = pts_arr
    cdef int npts = 0
    cdef int cx = start_x
    cdef int cy = start_y
    cdef int back_dir = 0
    cdef int fs_x = -1, fs_y = -1, fs_dir = -1
    cdef int found, found_step, step, d, nx, ny, prev, bdx, bdy
    cdef long long it

    pts[npts, 0] = cx
    pts[npts, 1] = cy
    npts += 1

    for it in range(limit):
        found = -1
        found_step = 0
        for step in range(1, 9):
            d = (back_dir + step) % 8
            nx = cx + _MX[d]
            ny = cy + _MY[d]
            if 0 <= nx < w and 0 <= ny < h and mask[ny, nx] != 0:
                found = d
                found_step = step
                break
        if found < 0:
            break
        prev = (back_dir + found_step - 1) % 8
        nx = cx + _MX[found]
        ny = cy + _MY[found]
        bdx = (cx + _MX[prev]) - nx
        bdy = (cy + _MY[prev]) - ny
        cx = nx
        cy = ny
        back_dir = _dir_index_c(bdx, bdy)
        if fs_x < 0:
            fs_x = cx
            fs_y = cy
            fs_dir = back_dir
        elif cx == fs_x and cy == fs_y and back_dir == fs_dir:
            break
        pts[npts, 0] = cx
        pts[npts, 1] = cy
        npts += 1

    if npts > 1 and pts[npts - 1, 0] == pts[0, 0] and pts[npts - 1, 1] == pts[0, 1]:
        npts -= 1
    return pts_arr[:npts].copy()


def count_enclosed(const cnp.uint8_t[:, ::1] mask):
    """Pixels inside or on the outer boundary (holes filled); 4-connected flood."""
    cdef int h = mask.shape[0]
    cdef int w = mask.shape[1]
    cdef int ph = h + 2
    cdef int pw = w + 2
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] reach_arr = np.zeros((ph, pw), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] reach = reach_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] stack_arr = np.empty(ph * pw, dtype=np.int64)
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef int top = 0
    cdef int px, py, nx, ny, k
    cdef int[4] dx4 = [-1, 1, 0, 0]
    cdef int[4] dy4 = [0, 0, -1, 1]
    cdef long long reached = 0

    reach[0, 0] = 1
    stack[top] = 0
    top += 1
    while top > 0:
        top -= 1
        px = <int>(stack[top] % pw)
        py = <int>(stack[top] // pw)
        for k in range(4):
            nx = px + dx4[k]
            ny = py + dy4[k]
            if 0 <= nx < pw and 0 <= ny < ph and reach[ny, nx] == 0:
                if 0 <= nx - 1 < w and 0 <= ny - 1 < h and mask[ny - 1, nx - 1] != 0:
                    continue
                reach[ny, nx] = 1
                stack[top] = <cnp.int64_t>ny * pw + nx
                top += 1
    for py in range(1, h + 1):
        for px in range(1, w + 1):
            if reach[py, px] != 0:
                reached += 1
    return int(<long long>h * w - reached)


def has_collinear_triple(const cnp.float64_t[::1] xs, const cnp.float64_t[::1] ys, double threshold):
    """True iff some point lies strictly within ``threshold`` of a line through two others."""
    cdef int n = xs.shape[0]
    cdef int i, j, k
    cdef double x1, y1, x2, y2, a, b, c, slope, norm
    if n < 3:
        return False
    for i in range(n):
        x1 = xs[i]
        y1 = ys[i]
        for j in range(i + 1, n):
            x2 = xs[j]
            y2 = ys[j]
            if fabs(x2 - x1) < 1e-6:
                a = 1.0
                b = 0.0
                c = -x1
            else:
                slope = (y2 - y1) / (x2 - x1)
                a = slope
                b = -1.0
                c = y1 - slope * x1
            norm = sqrt(a * a + b * b)
            a = a / norm
            b = b / norm
            c = c / norm
            for k in range(n):
                if k == i or k == j:
                    continue
                if fabs(a * xs[k] + b * ys[k] + c) < threshold:
                    return True
    return False
