"""Compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest

from bpforge import synthetic as syn
from bpforge.raster import _kernels_py as pure

compiled = pytest.importorskip("bpforge.raster._kernels")


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("connectivity", [4, 8])
def test_label_image_parity(seed, connectivity):
    mask = syn.random_blobs(70, 60, 30, seed=seed).astype(np.uint8)
    la, na = compiled.label_image(mask, connectivity)
    lb, nb = pure.label_image(mask, connectivity)
    assert na == nb
    assert np.array_equal(la, lb)


@pytest.mark.parametrize("seed", range(8))
def test_trace_boundary_parity(seed):
    mask = syn.random_blobs(50, 50, 6, seed=seed).astype(np.uint8)
    labels, n = pure.label_image(mask, 8)
    for lab in range(1, n + 1):
        ys, xs = np.nonzero(labels == lab)
        comp = (labels == lab).astype(np.uint8)
        first = int(np.lexsort((xs, ys))[0])
        a = compiled.trace_boundary(comp, int(xs[first]), int(ys[first]))
        b = pure.trace_boundary(comp, int(xs[first]), int(ys[first]))
        assert np.array_equal(a, b)


@pytest.mark.parametrize("seed", range(8))
def test_count_enclosed_parity(seed):
    mask = syn.random_blobs(40, 40, 5, seed=seed).astype(np.uint8)
    assert compiled.count_enclosed(mask) == pure.count_enclosed(mask)


def test_count_enclosed_fills_holes():
    m = syn.blank(40)
    syn.draw_ring(m, 20, 20, 15, 9)
    ring = m.astype(np.uint8)
    disk = syn.blank(40)
    syn.draw_disk(disk, 20, 20, 15)
    assert compiled.count_enclosed(ring) == int(disk.sum())


@pytest.mark.parametrize("seed", range(10))
def test_collinear_parity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 10))
    xs = np.ascontiguousarray(rng.uniform(0, 50, n))
    ys = np.ascontiguousarray(rng.uniform(0, 50, n))
    thr = float(rng.uniform(0.5, 8.0))
    assert compiled.has_collinear_triple(xs, ys, thr) == pure.has_collinear_triple(xs, ys, thr)
