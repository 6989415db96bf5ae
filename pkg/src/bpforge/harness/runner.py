"""Task orchestration: dataset in, Report out."""

import logging
from dataclasses import replace

from ..errors import InvalidInput, NoHypotheses
from ..oracle.backends import LiveBackend, ReplayBackend, ScriptedBackend
from ..oracle.scripted import DemoResponder
from ..retrieval import build_index, default_corpus_dir
from ..seeds import derive
from ..verify.pipeline import run_inversion_task, run_verification_task
from ..verify.solution import solve_problem
from .config import RunConfig
from .dataset import DatasetManifest, load_problem
from .report import Report

logger = logging.getLogger(__name__)

SOLVE_DEFAULT_RANGE = (2, 100)


def make_backend(cfg: RunConfig):
    if cfg.backend == "scripted":
        return ScriptedBackend(DemoResponder())
    if cfg.backend == "replay":
        if not cfg.cache_path:
            raise InvalidInput("replay backend needs a cache path")
        return ReplayBackend(cfg.cache_path)
    if not cfg.cache_path:
        raise InvalidInput("live backend needs a cache path to record into")
    return LiveBackend(cache_path=cfg.cache_path)


def _fold_record(fold) -> dict:
    return {
        "holdout": fold.holdout_index,
        "path": fold.path,
        "predictions": [str(p) for p in fold.predictions] if fold.predictions else None,
        "correct": list(fold.correct) if fold.correct else None,
        "accepted_size": fold.accepted_size,
        "n_candidates": fold.n_candidates,
        "n_repair_requests": fold.n_repair_requests,
        "aborted": fold.aborted,
    }


def _normalize_rule(rule: str | None) -> str:
    return " ".join((rule or "").split()).casefold()


def run(cfg: RunConfig, manifest: DatasetManifest, backend=None, index=None) -> Report:
    """Execute the configured task over the manifest's problem range.

    ``backend`` and ``index`` can be injected (tests, recording wrappers);
    by default they come from the config.
    """
    if backend is None:
        backend = make_backend(cfg)
    if index is None:
        index = build_index(cfg.corpus_dir or default_corpus_dir())

    span = cfg.problems
    if span is None and cfg.task == "solve":
        span = SOLVE_DEFAULT_RANGE
    entries = manifest.in_range(span)

    report = Report(
        task=cfg.task,
        seed=cfg.seed,
        backend_kind=getattr(backend, "kind", "injected"),
        config_digest=cfg.digest(),
    )

    if cfg.task == "solve":
        curriculum: list = []
        for entry in entries:
            problem = load_problem(entry, cfg.binarize_threshold)
            record = {"id": entry.id, "category": entry.category}
            try:
                ranked = solve_problem(
                    problem, curriculum, backend, index, cfg, seed=derive(cfg.seed, "problem", entry.id)
                )
                top = ranked[0]
                record.update(
                    top_rule=top.rule,
                    top_score=top.score,
                    top_path=top.path,
                    n_hypotheses=len(ranked),
                    solved=bool(
                        entry.rule_pos and _normalize_rule(top.rule) == _normalize_rule(entry.rule_pos)
                    ),
                    scores=[{"rule": r.rule, "score": r.score, "path": r.path} for r in ranked],
                )
            except NoHypotheses as e:
                logger.warning("problem %d: %s", entry.id, e)
                record.update(top_rule=None, top_score=None, solved=False, error=str(e))
            report.problem_records.append(record)
            if entry.rule_pos:
                curriculum.append((entry.id, entry.rule_pos))
        return report

    task_cfg = cfg if cfg.task != "eval" else replace(cfg, programs_enabled=False)
    for entry in entries:
        problem = load_problem(entry, cfg.binarize_threshold)
        seed = derive(cfg.seed, "problem", entry.id)
        if cfg.task == "invert":
            outcome = run_inversion_task(problem, backend, index, task_cfg, seed=seed)
        else:
            outcome = run_verification_task(problem, backend, index, task_cfg, seed=seed)
        report.problem_records.append(
            {
                "id": entry.id,
                "category": entry.category,
                "task": outcome.task,
                "n_correct": outcome.n_correct,
                "n_predictions": outcome.n_predictions,
                "n_aborted": outcome.n_aborted,
                "accuracy": outcome.accuracy,
                "folds": [_fold_record(f) for f in outcome.folds],
            }
        )
    return report
