"""Scoring, accepted set, majority vote, folds, and inversion."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpforge import synthetic as syn
from bpforge.dsl import parse_program
from bpforge.dsl.ast import Label
from bpforge.errors import InvalidInput
from bpforge.verify import (
    CandidateRecord,
    accepted_set,
    all_folds,
    classify_by_majority,
    invert_problem,
    make_fold,
    score_program,
    vote,
)

POSITIVE, NEGATIVE = Label.POSITIVE, Label.NEGATIVE

CONSTANT_POSITIVE = parse_program("classify_image(image) := POSITIVE")
SIZE_PROGRAM = parse_program(
    "param t : float in (1, 500)\n"
    "classify_image(image) := if exists c in components(image) : pixel_count(c) > t "
    "then POSITIVE else NEGATIVE"
)


def disk_panel(r, side=64):
    m = syn.blank(side)
    syn.draw_disk(m, side // 2, side // 2, r)
    return syn.to_image(m)


# --- score_program ------------------------------------------------------------


def test_perfect_program_scores_one():
    train = [(disk_panel(15), POSITIVE)] * 5 + [(disk_panel(4), NEGATIVE)] * 5
    assert score_program(SIZE_PROGRAM, {"t": 300.0}, train) == 1.0


def test_nine_of_ten_scores_point_nine():
    train = [(disk_panel(15), POSITIVE)] * 5 + [(disk_panel(4), NEGATIVE)] * 4 + [(disk_panel(15), NEGATIVE)]
    assert score_program(SIZE_PROGRAM, {"t": 300.0}, train) == 0.9


def test_constant_positive_on_balanced_set_scores_half():
    train = [(disk_panel(10), POSITIVE)] * 5 + [(disk_panel(10), NEGATIVE)] * 5
    assert score_program(CONSTANT_POSITIVE, {}, train) == 0.5


def test_empty_example_set_rejected():
    with pytest.raises(InvalidInput):
        score_program(CONSTANT_POSITIVE, {}, [])


def test_runtime_failure_counts_as_mismatch():
    crashy = parse_program(
        "classify_image(image) := if 1 / total_ink_length(image) > 0 then POSITIVE else NEGATIVE"
    )
    empty = syn.to_image(syn.blank(10))
    assert score_program(crashy, {}, [(empty, POSITIVE), (disk_panel(8), POSITIVE)]) == 0.5


# --- accepted set ---------------------------------------------------------------


def _records(scores):
    return [
        CandidateRecord(program=CONSTANT_POSITIVE, bindings={}, train_score=s, generation_index=i)
        for i, s in enumerate(scores)
    ]


def test_accepted_examples_from_contract():
    assert [r.train_score for r in accepted_set(_records([0.9, 1.0, 1.0]))] == [1.0, 1.0]
    assert accepted_set(_records([0.8, 0.8])) == []
    assert [r.train_score for r in accepted_set(_records([0.9]))] == [0.9]
    assert accepted_set([]) == []


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sampled_from([i / 10 for i in range(11)]), max_size=12))
def test_accepted_set_equals_brute_force(scores):
    records = _records(scores)
    got = accepted_set(records)
    brute = [r for r in records if scores and r.train_score == max(scores) and r.train_score >= 0.9]
    assert got == brute


def test_accepted_set_brute_force_on_1000_random_tables():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        scores = [round(float(s), 2) for s in rng.choice(np.linspace(0, 1, 21), size=rng.integers(0, 12))]
        records = _records(scores)
        brute = [r for r in records if scores and r.train_score == max(scores) and r.train_score >= 0.9]
        assert accepted_set(records) == brute


# --- majority vote ---------------------------------------------------------------


def test_majority_examples_from_contract():
    img = disk_panel(10)

    def rec(label):
        program = CONSTANT_POSITIVE if label is POSITIVE else parse_program("classify_image(image) := NEGATIVE")
        return CandidateRecord(program=program, bindings={}, train_score=1.0)

    assert classify_by_majority([rec(POSITIVE), rec(POSITIVE), rec(NEGATIVE)], img) is POSITIVE
    assert classify_by_majority([rec(POSITIVE)], img) is POSITIVE
    # exact tie without a fallback resolves to NEGATIVE
    assert classify_by_majority([rec(POSITIVE), rec(NEGATIVE)], img) is NEGATIVE
    called = []
    tie = classify_by_majority(
        [rec(POSITIVE), rec(NEGATIVE)], img, tie_fallback=lambda i: called.append(i) or POSITIVE
    )
    assert tie is POSITIVE and len(called) == 1


def test_vote_equals_brute_force_on_all_multisets_up_to_7():
    for size in range(0, 8):
        for labels in itertools.product((POSITIVE, NEGATIVE), repeat=size):
            n_pos = sum(1 for l in labels if l is POSITIVE)
            n_neg = size - n_pos
            expected = POSITIVE if n_pos * 2 > size else NEGATIVE if n_neg * 2 > size else None
            assert vote(labels) == expected


def test_majority_rejects_empty_accepted_set():
    with pytest.raises(InvalidInput):
        classify_by_majority([], disk_panel(5))


# --- folds -----------------------------------------------------------------------


def make_problem(problem_id=1):
    def panel(r, cx):
        m = syn.blank(64)
        syn.draw_disk(m, cx, 32, r)
        return syn.to_image(m)

    positives = tuple(panel(12 + i, 24 + 2 * i) for i in range(6))
    negatives = tuple(panel(3 + (i % 2), 20 + 4 * i) for i in range(6))
    from bpforge.verify import BongardProblem

    return BongardProblem(
        id=problem_id, positives=positives, negatives=negatives,
        rule_pos="large figures", rule_neg="small figures", category="size",
    )


def test_fold_partition_property():
    problem = make_problem()
    every = {img.digest() for img in problem.positives + problem.negatives}
    for fold in all_folds(problem):
        train = {img.digest() for img, _ in fold.train}
        test = {img.digest() for img, _ in fold.test}
        assert len(fold.train) == 10 and len(fold.test) == 2
        assert train | test == every
        assert train & test == set()


def test_fold_holds_out_matching_index():
    problem = make_problem()
    fold = make_fold(problem, 3)
    assert fold.test[0][0] == problem.positives[3]
    assert fold.test[1][0] == problem.negatives[3]
    assert fold.test[0][1] is POSITIVE and fold.test[1][1] is NEGATIVE


def test_inversion_is_involution():
    problem = make_problem()
    twice = invert_problem(invert_problem(problem))
    assert twice == problem
    inverted = invert_problem(problem)
    assert inverted.positives == problem.negatives
    assert inverted.rule_pos == problem.rule_neg
    assert inverted.category == problem.category
