"""High-level oracle operations used by the verifier pipeline."""

import logging
from dataclasses import dataclass

import numpy as np

from ..dsl import try_parse_program
from ..dsl.ast import Label, StubDecl
from ..errors import NoHypotheses, RepairFailed
from ..seeds import derive
from .chat import make_request
from .extract import extract_code_blocks, extract_label, extract_objects, extract_rules
from .prompts import (
    hypothesis_turns,
    render_stub_doc,
    repair_turns,
    stub_request_turns,
    synthesis_turns,
    transduction_turns,
)

logger = logging.getLogger(__name__)

N_RULES_PER_CALL = 6
N_CURRICULUM_EXAMPLES = 3


@dataclass(frozen=True)
class FailureReport:
    """What went wrong with a candidate: per-side miscounts, plus the
    exception text only if one occurred."""

    n_pos_wrong: int
    n_neg_wrong: int
    exception_text: str | None = None


def generate_hypotheses(backend, problem, curriculum, cfg=None, seed: int = 0) -> list[str]:
    """Sample candidate rules: one call seeded with the immediately preceding
    problems' rules, one with random solved rules, each asking for n per call.

    Returns up to 2n rules, deduplicated case-insensitively, order preserved.
    """
    n_rules = getattr(cfg, "n_rules", N_RULES_PER_CALL) if cfg is not None else N_RULES_PER_CALL
    curriculum = list(curriculum)
    recent = [rule for _, rule in curriculum[-N_CURRICULUM_EXAMPLES:]]
    rng = np.random.default_rng(derive(seed, "hypothesis-random"))
    k = min(N_CURRICULUM_EXAMPLES, len(curriculum))
    picks = sorted(rng.choice(len(curriculum), size=k, replace=False).tolist()) if k else []
    random_rules = [curriculum[i][1] for i in picks]

    rules: list[str] = []
    seen: set[str] = set()
    for example_rules in (recent, random_rules):
        turns = hypothesis_turns(problem.positives, problem.negatives, example_rules, n_rules)
        response = backend.complete(make_request(turns, "hypotheses", cfg))
        for rule in extract_rules(response)[:n_rules]:
            key = rule.lower()
            if key not in seen:
                seen.add(key)
                rules.append(rule)
    if not rules:
        raise NoHypotheses(f"problem {problem.id}: no extractable rules in either response")
    return rules


def suggest_method_stubs(backend, rule: str, cfg=None) -> list[StubDecl]:
    """Ask which objects matter for the rule; stubs are optional guidance."""
    response = backend.complete(make_request(stub_request_turns(rule), "stubs", cfg))
    return [StubDecl(object_name=name, doc=render_stub_doc(name)) for name in extract_objects(response)]


def synthesize_programs(
    backend, rule_pos, rule_neg, positives, negatives, stubs, retrieved, n: int, cfg=None
) -> list[str]:
    """Request n candidate programs; unparseable blocks are dropped with a log line."""
    turns = synthesis_turns(rule_pos, rule_neg, positives, negatives, stubs, retrieved, n)
    response = backend.complete(make_request(turns, "synthesis", cfg))
    sources = []
    for block in extract_code_blocks(response):
        program, diags = try_parse_program(block)
        if program is None:
            logger.info("dropping unparseable candidate: %s", "; ".join(str(d) for d in diags[:3]))
            continue
        sources.append(block)
        if len(sources) == n:
            break
    return sources


def request_repair(backend, source: str, failure: FailureReport, rule: str, cfg=None) -> str:
    """One repair round for a sub-perfect candidate; RepairFailed if no code returns."""
    turns = repair_turns(source, failure.exception_text, failure.n_pos_wrong, failure.n_neg_wrong, rule)
    response = backend.complete(make_request(turns, "repair", cfg))
    blocks = extract_code_blocks(response)
    if not blocks:
        raise RepairFailed("repair response contained no fenced program")
    return blocks[0]


def transduce_label(backend, train, test_image, rule_pos: str, rule_neg: str, cfg=None) -> Label:
    """Direct oracle labeling of one test panel from in-context train examples.

    Raises AmbiguousLabel when the response has no label token; callers map
    that to NEGATIVE with a warning.
    """
    positives = [img for img, lab in train if lab is Label.POSITIVE]
    negatives = [img for img, lab in train if lab is Label.NEGATIVE]
    turns = transduction_turns(rule_pos, rule_neg, positives, negatives, test_image)
    response = backend.complete(make_request(turns, "transduction", cfg))
    return extract_label(response)
