"""Program verification: scoring, accepted set, folds, tasks."""

from .pipeline import (
    FoldResult,
    VerificationOutcome,
    build_failure_report,
    run_fold,
    run_inversion_task,
    run_verification_task,
)
from .problem import BongardProblem, Fold, all_folds, invert_problem, make_fold
from .scoring import (
    ACCEPT_THRESHOLD,
    CandidateRecord,
    accepted_set,
    classify_by_majority,
    score_program,
    vote,
)
from .solution import RuleScore, score_rule_for_solution, solve_problem

__all__ = [
    "ACCEPT_THRESHOLD",
    "BongardProblem",
    "CandidateRecord",
    "Fold",
    "FoldResult",
    "RuleScore",
    "VerificationOutcome",
    "accepted_set",
    "all_folds",
    "build_failure_report",
    "classify_by_majority",
    "invert_problem",
    "make_fold",
    "run_fold",
    "run_inversion_task",
    "run_verification_task",
    "score_program",
    "score_rule_for_solution",
    "solve_problem",
    "vote",
]
