"""Bongard problems, train/test folds, and the inversion transform."""

from dataclasses import dataclass, replace

from ..dsl.ast import Label
from ..raster import BinaryImage

SIDE = 6  # panels per concept
CATEGORIES = ("concept", "number", "same", "size", "spatial")


@dataclass(frozen=True)
class BongardProblem:
    id: int
    positives: tuple[BinaryImage, ...]
    negatives: tuple[BinaryImage, ...]
    rule_pos: str | None = None
    rule_neg: str | None = None
    category: str | None = None

    def __post_init__(self):
        if len(self.positives) != SIDE or len(self.negatives) != SIDE:
            raise ValueError(
                f"problem {self.id}: need {SIDE}+{SIDE} panels, got {len(self.positives)}+{len(self.negatives)}"
            )
        if self.category is not None and self.category not in CATEGORIES:
            raise ValueError(f"problem {self.id}: unknown category {self.category!r}")

    def negative_rule_text(self) -> str:
        return self.rule_neg if self.rule_neg else f"not {self.rule_pos}"


@dataclass(frozen=True)
class Fold:
    """One train/test split, holding out the panel pair at ``holdout_index``."""

    holdout_index: int
    train: tuple  # 10 (image, Label) pairs: 5 positive then 5 negative
    test: tuple  # ((pos_image, POSITIVE), (neg_image, NEGATIVE))

    @property
    def train_positives(self):
        return tuple(img for img, lab in self.train if lab is Label.POSITIVE)

    @property
    def train_negatives(self):
        return tuple(img for img, lab in self.train if lab is Label.NEGATIVE)


def make_fold(problem: BongardProblem, holdout_index: int) -> Fold:
    if not 0 <= holdout_index < SIDE:
        raise ValueError(f"holdout index must be 0..{SIDE - 1}, got {holdout_index}")
    train = tuple(
        (img, Label.POSITIVE) for i, img in enumerate(problem.positives) if i != holdout_index
    ) + tuple(
        (img, Label.NEGATIVE) for i, img in enumerate(problem.negatives) if i != holdout_index
    )
    test = (
        (problem.positives[holdout_index], Label.POSITIVE),
        (problem.negatives[holdout_index], Label.NEGATIVE),
    )
    return Fold(holdout_index=holdout_index, train=train, test=test)


def all_folds(problem: BongardProblem) -> list[Fold]:
    return [make_fold(problem, i) for i in range(SIDE)]


def invert_problem(problem: BongardProblem) -> BongardProblem:
    """Swap positive and negative sides (images and concept texts).

    Applying it twice reproduces the original problem exactly.
    """
    return replace(
        problem,
        positives=problem.negatives,
        negatives=problem.positives,
        rule_pos=problem.rule_neg,
        rule_neg=problem.rule_pos,
    )
