"""Synthetic panel drawing and fixture problem generators.

Used by the test suite, the kernel benchmark, and the scripted demo
backend. All generators are seeded and deterministic.
"""

import numpy as np

from .raster.image import BinaryImage

PANEL = 96  # default square panel side


def blank(w: int = PANEL, h: int | None = None) -> np.ndarray:
    return np.zeros((h if h is not None else w, w), dtype=bool)


def to_image(mask: np.ndarray) -> BinaryImage:
    return BinaryImage(mask)


def draw_disk(mask, cx, cy, r) -> None:
    h, w = mask.shape
    ys, xs = np.ogrid[:h, :w]
    mask[(xs - cx) ** 2 + (ys - cy) ** 2 <= r * r] = True


def draw_ring(mask, cx, cy, r_outer, r_inner) -> None:
    h, w = mask.shape
    ys, xs = np.ogrid[:h, :w]
    d2 = (xs - cx) ** 2 + (ys - cy) ** 2
    mask[(d2 <= r_outer * r_outer) & (d2 > r_inner * r_inner)] = True


def draw_rect(mask, x, y, w, h) -> None:
    mask[y : y + h, x : x + w] = True


def draw_line(mask, x0, y0, x1, y1, thickness: int = 1) -> None:
    """Bresenham line, optionally thickened into a square brush."""
    dx, dy = abs(x1 - x0), abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx - dy
    x, y = x0, y0
    t0 = thickness // 2
    hgt, wid = mask.shape
    while True:
        ya, yb = max(y - t0, 0), min(y - t0 + thickness, hgt)
        xa, xb = max(x - t0, 0), min(x - t0 + thickness, wid)
        mask[ya:yb, xa:xb] = True
        if x == x1 and y == y1:
            break
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x += sx
        if e2 < dx:
            err += dx
            y += sy


def draw_dots(mask, points, r: int = 2) -> None:
    for x, y in points:
        draw_disk(mask, x, y, r)


def random_blobs(w: int, h: int, n: int, seed: int, r_range=(2, 6)) -> np.ndarray:
    """n random disks; blobs may merge, so the component count can be < n."""
    rng = np.random.default_rng(seed)
    mask = np.zeros((h, w), dtype=bool)
    for _ in range(n):
        r = int(rng.integers(r_range[0], r_range[1] + 1))
        cx = int(rng.integers(r, w - r))
        cy = int(rng.integers(r, h - r))
        draw_disk(mask, cx, cy, r)
    return mask


def stroke_panel(frac: float, side: int = PANEL, y: int | None = None) -> BinaryImage:
    """A single horizontal stroke covering ``frac`` of the panel width."""
    mask = blank(side)
    y = side // 2 if y is None else y
    x1 = max(int(side * frac) - 1, 1)
    draw_line(mask, 0, y, x1, y)
    return to_image(mask)


def scattered_dots_panel(coords, side: int = PANEL, r: int = 2) -> BinaryImage:
    mask = blank(side)
    draw_dots(mask, coords, r=r)
    return to_image(mask)


# ---------------------------------------------------------------------------
# Fixture problems: ten separable concepts, each bundled with a known-good
# program (and its label-swapped inverse, which solves the inverted problem).

from dataclasses import dataclass  # noqa: E402

from .verify.problem import BongardProblem  # noqa: E402


@dataclass(frozen=True)
class FixtureProblem:
    problem: BongardProblem
    program_source: str
    inverse_program_source: str
    ambiguous: bool = False
    decoy_rule: str | None = None  # scores as well as the truth on this fixture


def _panels(make_mask):
    return tuple(to_image(make_mask(i)) for i in range(6))


def _program(condition: str, params: str = "", flip: bool = False) -> str:
    first, second = ("NEGATIVE", "POSITIVE") if flip else ("POSITIVE", "NEGATIVE")
    header = params + "\n" if params else ""
    return f"{header}classify_image(image) :=\n  if {condition}\n  then {first}\n  else {second}\n"


def _fixture(problem_id, rule_pos, rule_neg, pos_masks, neg_masks, condition, params="",
             category=None, ambiguous=False, decoy_rule=None) -> FixtureProblem:
    problem = BongardProblem(
        id=problem_id,
        positives=_panels(pos_masks),
        negatives=_panels(neg_masks),
        rule_pos=rule_pos,
        rule_neg=rule_neg,
        category=category,
    )
    return FixtureProblem(
        problem=problem,
        program_source=_program(condition, params),
        inverse_program_source=_program(condition, params, flip=True),
        ambiguous=ambiguous,
        decoy_rule=decoy_rule,
    )


def _ink_length_fixture(problem_id=101):
    # stroke lengths are constant per side (only positions vary), so any
    # train-perfect threshold transfers to the held-out panels
    def pos(i):
        m = blank(PANEL)
        draw_line(m, 2, 18 + 6 * i, PANEL - 4, 18 + 6 * i)
        draw_line(m, 4, 80 - 3 * i, 4 + PANEL // 2, 80 - 3 * i)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_line(m, 6 + i, 40 + 4 * i, 6 + i + 15, 40 + 4 * i)
        return m

    return _fixture(
        problem_id,
        "large total line length",
        "small total line length",
        pos,
        neg,
        "total_ink_length(image) > length_threshold / 1000",
        "param length_threshold : float in (100, 2000)",
        category="size",
    )


def _collinear_fixture(problem_id=102):
    def pos(i):
        m = blank(PANEL)
        # three dots exactly on a line, one well away from it
        draw_dots(m, [(12, 24 + i), (42, 44 + i), (72, 64 + i), (70, 14)], r=2)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_dots(m, [(16, 16 + i), (78, 26), (20, 76), (70, 66 - i)], r=2)
        return m

    return _fixture(
        problem_id,
        "three points are approximately collinear",
        "no three points are approximately collinear",
        pos,
        neg,
        "approx_collinear(centroids(image), distance_threshold)",
        "param distance_threshold : float in (1.0, 5.0)",
        category="spatial",
    )


def _count_fixture(problem_id=103):
    spots = ((16, 16), (48, 14), (80, 18), (18, 50), (50, 52), (80, 48), (16, 80), (50, 82), (80, 78))

    def with_n(n, offset):
        m = blank(PANEL)
        draw_dots(m, [spots[(offset + j) % len(spots)] for j in range(n)], r=4)
        return m

    return _fixture(
        problem_id,
        "many separate figures",
        "few separate figures",
        lambda i: with_n(5 + (i % 2), i),
        lambda i: with_n(1 + (i % 2), i),
        "size(components(image)) > count_threshold",
        "param count_threshold : int in (1, 12)",
        category="number",
    )


def _big_fixture(problem_id=104):
    def pos(i):
        m = blank(PANEL)
        draw_disk(m, 34 + 4 * i, 40 + 2 * i, 18 + (i % 3))
        return m

    def neg(i):
        m = blank(PANEL)
        draw_disk(m, 30 + 6 * i, 60 - 4 * i, 5 + (i % 2))
        return m

    return _fixture(
        problem_id,
        "large figures",
        "small figures",
        pos,
        neg,
        "exists c in components(image) : pixel_count(c) > area_threshold",
        "param area_threshold : float in (10, 4000)",
        category="size",
    )


def _elongated_fixture(problem_id=105):
    def pos(i):
        m = blank(PANEL)
        draw_rect(m, 14 + 2 * i, 30 + 6 * i, 62, 4)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_rect(m, 30 + 3 * i, 28 + 5 * i, 22, 18)
        return m

    return _fixture(
        problem_id,
        "contains an elongated figure",
        "all figures are compact",
        pos,
        neg,
        "exists c in components(image) : measure(contour(c), elongation) > elongation_threshold",
        "param elongation_threshold : float in (1.5, 20.0)",
        category="concept",
    )


def _tall_fixture(problem_id=106):
    def pos(i):
        m = blank(PANEL)
        draw_rect(m, 30 + 5 * i, 14, 8, 58 + i)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_rect(m, 14, 30 + 5 * i, 58 + i, 8)
        return m

    return _fixture(
        problem_id,
        "contains a figure that is much taller than it is wide",
        "contains a figure that is much wider than it is tall",
        pos,
        neg,
        "exists c in components(image) : bbox_height(c) > bbox_width(c) * aspect_threshold",
        "param aspect_threshold : float in (1.1, 5.0)",
        category="spatial",
    )


def _connected_fixture(problem_id=107):
    def pos(i):
        m = blank(PANEL)
        draw_ring(m, 46 + i, 46 - i, 24 + (i % 3), 16)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_dots(m, [(22 + i, 24), (70, 30 + i), (40, 72 - i)], r=5)
        return m

    return _fixture(
        problem_id,
        "all ink forms a single connected figure",
        "ink forms several separate figures",
        pos,
        neg,
        "size(components(image)) == 1",
        category="number",
    )


def _exactly_three_fixture(problem_id=108, ambiguous=False):
    spots = ((18, 20), (50, 18), (80, 24), (20, 56), (52, 54), (78, 58), (22, 82), (55, 80))

    def with_n(n, offset):
        m = blank(PANEL)
        draw_dots(m, [spots[(offset + j) % len(spots)] for j in range(n)], r=4)
        return m

    if ambiguous:
        # One big figure on the negative side: "many separate figures"
        # separates this panel set just as perfectly as the true rule.
        def neg(i):
            m = blank(PANEL)
            draw_disk(m, 44 + 2 * i, 48 - i, 16)
            return m

        neg_rule = "a single figure"
    else:
        def neg(i):
            return with_n(2 if i % 2 == 0 else 5, i)

        neg_rule = "not exactly three separate figures"

    return _fixture(
        problem_id,
        "exactly three separate figures",
        neg_rule,
        lambda i: with_n(3, i),
        neg,
        "size(components(image)) == target_count",
        "param target_count : int in (1, 6)",
        category="number",
        ambiguous=ambiguous,
        decoy_rule="many separate figures" if ambiguous else None,
    )


def _convex_fixture(problem_id=109):
    # identical shapes per side, shifted per panel: per-side convexity is
    # constant, so the fitted threshold cannot straddle a holdout value
    def pos(i):
        m = blank(PANEL)
        if i % 2 == 0:
            draw_disk(m, 42 + 2 * i, 46 - i, 15)
        else:
            draw_rect(m, 30 + i, 32 - i, 26, 22)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_rect(m, 26 + i, 26 + i, 36, 10)
        draw_rect(m, 26 + i, 26 + i, 10, 40)
        return m

    return _fixture(
        problem_id,
        "every outline is convex",
        "contains a concave outline",
        pos,
        neg,
        "forall c in components(image) : measure(contour(c), convexity) > convexity_threshold",
        "param convexity_threshold : float in (0.5, 0.99)",
        category="concept",
    )


def _centered_fixture(problem_id=110):
    # opposite dots on an exact radius-5 ring around the center: every
    # positive centroid sits at distance 5.0, every negative near 50
    ring = ((3, 4), (4, 3), (5, 0), (0, 5), (4, -3), (3, -4))

    def pos(i):
        m = blank(PANEL)
        vx, vy = ring[i]
        draw_dots(m, [(48 + vx, 48 + vy), (48 - vx, 48 - vy)], r=2)
        return m

    def neg(i):
        m = blank(PANEL)
        draw_dots(m, [(10 + i, 12), (86 - i, 84)], r=2)
        return m

    condition = (
        "forall c in components(image) :\n"
        "       let p = centroid(c) in\n"
        "       sqrt((point_x(p) - image_width(image) / 2) * (point_x(p) - image_width(image) / 2)\n"
        "            + (point_y(p) - image_height(image) / 2) * (point_y(p) - image_height(image) / 2))\n"
        "         < center_radius"
    )
    return _fixture(
        problem_id,
        "figures are clustered near the center",
        "figures sit near the panel corners",
        pos,
        neg,
        condition,
        "param center_radius : float in (3, 200)",
        category="spatial",
    )


def fixture_suite(include_ambiguous: bool = False) -> list[FixtureProblem]:
    """Ten separable fixture problems, ids 101..110.

    With ``include_ambiguous`` the exactly-three fixture becomes the variant
    a decoy rule separates equally well.
    """
    return [
        _ink_length_fixture(101),
        _collinear_fixture(102),
        _count_fixture(103),
        _big_fixture(104),
        _elongated_fixture(105),
        _tall_fixture(106),
        _connected_fixture(107),
        _exactly_three_fixture(108, ambiguous=include_ambiguous),
        _convex_fixture(109),
        _centered_fixture(110),
    ]
