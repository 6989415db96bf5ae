"""Program scoring, the accepted set, and majority voting."""

import logging
from collections import Counter
from dataclasses import dataclass, field

from ..dsl import evaluate
from ..dsl.ast import ClassifierProgram, Label
from ..errors import EvalError, InvalidInput
from ..optimize import OptTrace

logger = logging.getLogger(__name__)

ACCEPT_THRESHOLD = 0.9


def score_program(p: ClassifierProgram, bindings: dict, examples) -> float:
    """Fraction of examples the program labels correctly.

    A runtime failure on an example counts as a misclassification.
    """
    examples = list(examples)
    if not examples:
        raise InvalidInput("cannot score a program on an empty example set")
    correct = 0
    for img, label in examples:
        try:
            if evaluate(p, img, bindings) is label:
                correct += 1
        except EvalError:
            pass
    return correct / len(examples)


@dataclass
class CandidateRecord:
    """One optimized candidate program within a fold."""

    program: ClassifierProgram
    bindings: dict
    train_score: float
    repaired: bool = False
    opt_trace: OptTrace | None = field(default=None, repr=False)
    generation_index: int = 0


def accepted_set(records, threshold: float = ACCEPT_THRESHOLD):
    """Candidates attaining the maximum train score, if that score passes the bar."""
    records = list(records)
    if not records:
        return []
    best = max(r.train_score for r in records)
    if best < threshold:
        return []
    return [r for r in records if r.train_score == best]


def vote(labels) -> Label | None:
    """Label held by more than half the voters; None on an exact tie."""
    counts = Counter(labels)
    if not counts:
        return None
    n = sum(counts.values())
    top, top_count = counts.most_common(1)[0]
    return top if top_count * 2 > n else None


def classify_by_majority(accepted, img, tie_fallback=None) -> Label:
    """Majority label of the accepted programs on one image.

    A program that fails at runtime votes NEGATIVE (it cannot affirm the
    concept). An exact tie defers to ``tie_fallback`` when configured and
    otherwise resolves to NEGATIVE.
    """
    if not accepted:
        raise InvalidInput("majority vote needs a nonempty accepted set")
    labels = []
    for record in accepted:
        try:
            labels.append(evaluate(record.program, img, record.bindings))
        except EvalError as e:
            logger.debug("accepted program failed on test image: %s", e)
            labels.append(Label.NEGATIVE)
    winner = vote(labels)
    if winner is not None:
        return winner
    if tie_fallback is not None:
        return tie_fallback(img)
    return Label.NEGATIVE
