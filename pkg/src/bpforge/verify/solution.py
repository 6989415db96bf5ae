"""Solution task: hypothesize rules, score each, rank.

A rule is scored on a single split (hold-out index 0) with the reduced
program budget: the best accepted program's train score contributes its
correct count over the 10 train panels, the two test panels are labeled
by majority vote, and the rule score is correct/12. Without an accepted
program the transduction fallback supplies both contributions, one cached
oracle call per distinct image.
"""

import logging
from dataclasses import dataclass

from ..errors import InvalidInput
from ..oracle.api import generate_hypotheses
from ..seeds import derive
from .pipeline import _transduce_or_negative, generate_candidates
from .problem import BongardProblem, make_fold
from .scoring import accepted_set, classify_by_majority

logger = logging.getLogger(__name__)

SOLUTION_HOLDOUT = 0


@dataclass
class RuleScore:
    rule: str
    score: float
    path: str  # "programs" | "fallback"
    train_correct: int
    test_correct: int
    generation_index: int


def score_rule_for_solution(rule: str, problem: BongardProblem, backend, index, cfg, seed=0) -> RuleScore:
    if not rule:
        raise InvalidInput("cannot score an empty rule")
    fold = make_fold(problem, SOLUTION_HOLDOUT)
    rule_neg = f"not {rule}"
    n_train = len(fold.train)

    records, _ = generate_candidates(
        backend, index, rule, rule_neg, fold, cfg, seed, n_programs=cfg.n_programs_solve
    )
    accepted = accepted_set(records, cfg.accept_threshold)

    cache: dict = {}

    def fallback(img):
        return _transduce_or_negative(backend, fold.train, img, rule, rule_neg, cfg, cache=cache)

    if accepted:
        path = "programs"
        best = max(r.train_score for r in accepted)
        train_correct = round(best * n_train)
        tie_fallback = fallback if cfg.fallback_enabled else None
        predictions = [classify_by_majority(accepted, img, tie_fallback=tie_fallback) for img, _ in fold.test]
    else:
        path = "fallback"
        train_correct = sum(1 for img, label in fold.train if fallback(img) is label)
        predictions = [fallback(img) for img, _ in fold.test]

    test_correct = sum(1 for pred, (_, label) in zip(predictions, fold.test) if pred is label)
    total = n_train + len(fold.test)
    return RuleScore(
        rule=rule,
        score=(train_correct + test_correct) / total,
        path=path,
        train_correct=train_correct,
        test_correct=test_correct,
        generation_index=0,
    )


def solve_problem(problem: BongardProblem, curriculum, backend, index, cfg, seed=0) -> list[RuleScore]:
    """Generate hypotheses, score each, and rank.

    Ranked descending by score; ties keep generation order, so the first
    hypothesis the oracle produced wins. The top entry is the emitted
    solution.
    """
    rules = generate_hypotheses(backend, problem, curriculum, cfg, seed=derive(seed, "hypotheses"))
    scored = []
    for i, rule in enumerate(rules):
        result = score_rule_for_solution(rule, problem, backend, index, cfg, seed=derive(seed, "rule", i))
        result.generation_index = i
        scored.append(result)
    scored.sort(key=lambda r: (-r.score, r.generation_index))
    return scored
