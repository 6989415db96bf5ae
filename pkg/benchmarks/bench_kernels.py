"""Benchmark the compiled raster kernels against the pure-Python fallback.

Runs each kernel on the same seeded inputs through both backends, checks
the outputs agree exactly, and reports timings:

    python benchmarks/bench_kernels.py --side 256 --repeat 5
"""

import argparse
import sys
import time

import numpy as np

from bpforge import synthetic as syn
from bpforge.raster import _kernels_py as pure

try:
    from bpforge.raster import _kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_label(backend, mask, repeat):
    return timeit(lambda: backend.label_image(mask, 8), repeat)


def bench_trace(backend, mask, starts, repeat):
    def run():
        return [backend.trace_boundary(mask, x, y) for x, y in starts]

    return timeit(run, repeat)


def bench_enclosed(backend, mask, repeat):
    return timeit(lambda: backend.count_enclosed(mask), repeat)


def bench_collinear(backend, xs, ys, repeat):
    return timeit(lambda: backend.has_collinear_triple(xs, ys, 0.75), repeat)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--side", type=int, default=256, help="panel side in pixels")
    parser.add_argument("--blobs", type=int, default=120)
    parser.add_argument("--points", type=int, default=60, help="point count for the collinearity kernel")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if compiled is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    mask = syn.random_blobs(args.side, args.side, args.blobs, seed=args.seed).astype(np.uint8)
    labels, n = pure.label_image(mask, 8)
    starts = []
    for lab in range(1, n + 1):
        ys, xs = np.nonzero(labels == lab)
        first = int(np.lexsort((xs, ys))[0])
        starts.append((int(xs[first]), int(ys[first])))
    comp_mask = (labels == 1).astype(np.uint8)
    rng = np.random.default_rng(args.seed)
    px = np.ascontiguousarray(rng.uniform(0, args.side, args.points))
    py = np.ascontiguousarray(rng.uniform(0, args.side, args.points))

    rows = []

    def compare(name, run_pure, run_compiled, equal):
        t_py, r_py = run_pure()
        t_c, r_c = run_compiled()
        assert equal(r_py, r_c), f"{name}: backend outputs differ"
        rows.append((name, t_py, t_c))

    compare(
        f"label_image ({args.side}x{args.side}, {n} comps)",
        lambda: bench_label(pure, mask, args.repeat),
        lambda: bench_label(compiled, mask, args.repeat),
        lambda a, b: np.array_equal(a[0], b[0]) and a[1] == b[1],
    )
    compare(
        f"trace_boundary (all {n} comps)",
        lambda: bench_trace(pure, mask, starts, args.repeat),
        lambda: bench_trace(compiled, mask, starts, args.repeat),
        lambda a, b: all(np.array_equal(x, y) for x, y in zip(a, b)),
    )
    compare(
        "count_enclosed (largest comp)",
        lambda: bench_enclosed(pure, comp_mask, args.repeat),
        lambda: bench_enclosed(compiled, comp_mask, args.repeat),
        lambda a, b: a == b,
    )
    compare(
        f"has_collinear_triple ({args.points} pts)",
        lambda: bench_collinear(pure, px, py, args.repeat),
        lambda: bench_collinear(compiled, px, py, args.repeat),
        lambda a, b: a == b,
    )

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, t_py, t_c in rows:
        print(f"{name:<{width}}  {t_py * 1e3:>8.2f}ms  {t_c * 1e3:>8.2f}ms  {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
