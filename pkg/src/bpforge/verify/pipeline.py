"""The fold pipeline: synthesize, optimize, repair once, accept, vote.

A fold runs programs when any candidate clears the acceptance bar and
otherwise falls back to direct oracle transduction. An oracle outage
aborts only the fold (recorded, never silently dropped); a missing replay
fixture propagates, since a replay run that hits the network is a bug.
"""

import logging
from dataclasses import dataclass, field

from ..dsl import evaluate, try_parse_program, validate
from ..dsl.ast import Label
from ..errors import (
    AmbiguousLabel,
    EvalError,
    InvalidInput,
    MissingFixture,
    OracleUnavailable,
    RepairFailed,
)
from ..optimize import OptBudget, optimize_params
from ..oracle.api import (
    FailureReport,
    request_repair,
    suggest_method_stubs,
    synthesize_programs,
    transduce_label,
)
from ..retrieval import retrieve_nearest
from ..seeds import derive
from .problem import BongardProblem, all_folds, invert_problem
from .scoring import CandidateRecord, accepted_set, classify_by_majority

logger = logging.getLogger(__name__)


@dataclass
class FoldResult:
    holdout_index: int
    path: str  # "programs" | "fallback"
    predictions: tuple | None = None  # (Label, Label) for (pos, neg) test panels
    correct: tuple | None = None
    accepted_size: int = 0
    n_candidates: int = 0
    n_repair_requests: int = 0
    best_train_score: float | None = None
    aborted: bool = False
    abort_reason: str | None = None

    @property
    def n_correct(self) -> int:
        return sum(self.correct) if self.correct else 0


@dataclass
class VerificationOutcome:
    problem_id: int
    task: str
    folds: list = field(default_factory=list)

    @property
    def n_predictions(self) -> int:
        return 2 * sum(1 for f in self.folds if not f.aborted)

    @property
    def n_correct(self) -> int:
        return sum(f.n_correct for f in self.folds if not f.aborted)

    @property
    def n_aborted(self) -> int:
        return sum(1 for f in self.folds if f.aborted)

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_predictions if self.n_predictions else 0.0


def build_failure_report(program, bindings, train) -> FailureReport:
    """Per-side miscounts plus the first runtime exception, if any."""
    n_pos_wrong = n_neg_wrong = 0
    exception_text = None
    for img, label in train:
        try:
            wrong = evaluate(program, img, bindings) is not label
        except EvalError as e:
            wrong = True
            if exception_text is None:
                exception_text = str(e)
        if wrong:
            if label is Label.POSITIVE:
                n_pos_wrong += 1
            else:
                n_neg_wrong += 1
    return FailureReport(n_pos_wrong=n_pos_wrong, n_neg_wrong=n_neg_wrong, exception_text=exception_text)


def _parse_and_validate(source: str):
    program, diags = try_parse_program(source)
    if program is None:
        return None, diags
    diags = validate(program)
    if diags:
        return None, diags
    return program, []


def generate_candidates(backend, index, rule_pos, rule_neg, fold, cfg, seed, n_programs):
    """Synthesize, optimize, and (once) repair candidates for one fold.

    Returns (records, n_repair_requests). Repaired versions join the pool
    alongside their originals; an unparseable repair drops just the repair.
    """
    budget = OptBudget(total_evals=cfg.bo_evals, init_design=cfg.bo_init)
    stubs = suggest_method_stubs(backend, rule_pos, cfg)
    retrieved = retrieve_nearest(index, rule_pos)
    sources = synthesize_programs(
        backend,
        rule_pos,
        rule_neg,
        fold.train_positives,
        fold.train_negatives,
        stubs,
        retrieved,
        n=n_programs,
        cfg=cfg,
    )

    records: list[CandidateRecord] = []
    for j, source in enumerate(sources):
        program, diags = _parse_and_validate(source)
        if program is None:
            logger.info("dropping invalid candidate %d: %s", j, "; ".join(map(str, diags[:3])))
            continue
        bindings, score, trace = optimize_params(program, fold.train, budget, derive(seed, "program", j))
        records.append(
            CandidateRecord(
                program=program,
                bindings=bindings,
                train_score=score,
                opt_trace=trace,
                generation_index=j,
            )
        )

    n_repairs = 0
    for record in [r for r in records if r.train_score < cfg.repair_threshold]:
        failure = build_failure_report(record.program, record.bindings, fold.train)
        n_repairs += 1
        try:
            repaired_source = request_repair(backend, record.program.source, failure, rule_pos, cfg)
        except RepairFailed as e:
            logger.info("repair of candidate %d failed: %s", record.generation_index, e)
            continue
        program, diags = _parse_and_validate(repaired_source)
        if program is None:
            logger.info(
                "dropping unparseable repair of candidate %d: %s",
                record.generation_index,
                "; ".join(map(str, diags[:3])),
            )
            continue
        bindings, score, trace = optimize_params(
            program, fold.train, budget, derive(seed, "repair", record.generation_index)
        )
        records.append(
            CandidateRecord(
                program=program,
                bindings=bindings,
                train_score=score,
                repaired=True,
                opt_trace=trace,
                generation_index=record.generation_index,
            )
        )
    return records, n_repairs


def _transduce_or_negative(backend, train, img, rule_pos, rule_neg, cfg, cache=None) -> Label:
    key = img.digest() if cache is not None else None
    if cache is not None and key in cache:
        return cache[key]
    try:
        label = transduce_label(backend, train, img, rule_pos, rule_neg, cfg)
    except AmbiguousLabel as e:
        logger.warning("ambiguous transduction response (%s); defaulting to NEGATIVE", e)
        label = Label.NEGATIVE
    if cache is not None:
        cache[key] = label
    return label


def run_fold(problem, rule, fold, backend, index, cfg, seed=0, n_programs=None) -> FoldResult:
    """Run one train/test split end to end; see the module docstring."""
    rule_neg = problem.negative_rule_text() if rule == problem.rule_pos else f"not {rule}"
    if n_programs is None:
        n_programs = cfg.n_programs_verify

    records: list[CandidateRecord] = []
    n_repairs = 0
    try:
        if cfg.programs_enabled:
            records, n_repairs = generate_candidates(
                backend, index, rule, rule_neg, fold, cfg, seed, n_programs
            )
        accepted = accepted_set(records, cfg.accept_threshold)

        def fallback(img):
            return _transduce_or_negative(backend, fold.train, img, rule, rule_neg, cfg)

        if accepted:
            path = "programs"
            tie_fallback = fallback if cfg.fallback_enabled else None
            predictions = tuple(
                classify_by_majority(accepted, img, tie_fallback=tie_fallback) for img, _ in fold.test
            )
        else:
            path = "fallback"
            predictions = tuple(fallback(img) for img, _ in fold.test)
    except MissingFixture:
        raise
    except OracleUnavailable as e:
        logger.warning("fold %d aborted: %s", fold.holdout_index, e)
        return FoldResult(
            holdout_index=fold.holdout_index,
            path="aborted",
            aborted=True,
            abort_reason=str(e),
            n_candidates=len(records),
            n_repair_requests=n_repairs,
        )

    correct = tuple(pred is label for pred, (_, label) in zip(predictions, fold.test))
    return FoldResult(
        holdout_index=fold.holdout_index,
        path=path,
        predictions=predictions,
        correct=correct,
        accepted_size=len(accepted),
        n_candidates=len(records),
        n_repair_requests=n_repairs,
        best_train_score=max((r.train_score for r in records), default=None),
    )


def run_verification_task(problem: BongardProblem, backend, index, cfg, seed=0) -> VerificationOutcome:
    """Six folds, hold-out index 0..5 each exactly once."""
    if not problem.rule_pos:
        raise InvalidInput(f"problem {problem.id}: verification needs a ground-truth rule")
    outcome = VerificationOutcome(problem_id=problem.id, task="verify")
    for fold in all_folds(problem):
        outcome.folds.append(
            run_fold(
                problem,
                problem.rule_pos,
                fold,
                backend,
                index,
                cfg,
                seed=derive(seed, "fold", fold.holdout_index),
            )
        )
    return outcome


def run_inversion_task(problem: BongardProblem, backend, index, cfg, seed=0) -> VerificationOutcome:
    """Verification with the positive and negative sides swapped."""
    inverted = invert_problem(problem)
    if not inverted.rule_pos:
        raise InvalidInput(f"problem {problem.id}: inversion needs a negative-side rule")
    outcome = run_verification_task(inverted, backend, index, cfg, seed=seed)
    outcome.task = "invert"
    return outcome
