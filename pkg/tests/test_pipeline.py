"""Fold pipeline, verification/inversion tasks, and solution scoring,
driven end to end by scripted oracles over the fixture problems."""

import pytest

from bpforge import synthetic as syn
from bpforge.dsl.ast import Label
from bpforge.errors import InvalidInput, NoHypotheses, OracleUnavailable
from bpforge.harness import RunConfig
from bpforge.oracle import ScriptedBackend
from bpforge.retrieval import build_index, default_corpus_dir
from bpforge.verify import (
    make_fold,
    run_fold,
    run_inversion_task,
    run_verification_task,
    score_rule_for_solution,
    solve_problem,
)
from conftest import FixtureResponder

CFG = RunConfig(task="verify", n_programs_verify=3, n_programs_solve=3)


@pytest.fixture(scope="module")
def index():
    return build_index(default_corpus_dir())


def backend_for(fixtures, **kwargs):
    return ScriptedBackend(FixtureResponder(fixtures, **kwargs))


# --- run_fold -----------------------------------------------------------------


def test_fold_with_perfect_program(fixtures, index):
    fx = fixtures[0]
    backend = backend_for([fx])
    fold = make_fold(fx.problem, 0)
    result = run_fold(fx.problem, fx.problem.rule_pos, fold, backend, index, CFG, seed=1)
    assert result.path == "programs"
    assert result.correct == (True, True)
    assert result.accepted_size >= 1
    assert result.n_repair_requests == 0
    assert result.best_train_score == 1.0


def test_fold_falls_back_on_unparseable_synthesis(fixtures, index):
    fx = fixtures[0]
    backend = backend_for([fx], garbage_synthesis=True, correct_transduction=True)
    fold = make_fold(fx.problem, 2)
    result = run_fold(fx.problem, fx.problem.rule_pos, fold, backend, index, CFG, seed=1)
    assert result.path == "fallback"
    assert result.correct == (True, True)
    assert result.accepted_size == 0
    purposes = [r.purpose for r in backend.requests]
    assert purposes.count("transduction") == 2


def test_fold_requests_exactly_one_repair_for_the_failing_candidate(fixtures, index):
    fx = fixtures[3]  # large vs small disks
    backend = backend_for([fx], inject_bad_for={fx.problem.rule_pos})
    fold = make_fold(fx.problem, 1)
    result = run_fold(fx.problem, fx.problem.rule_pos, fold, backend, index, CFG, seed=2)
    assert result.path == "programs"
    assert result.n_repair_requests == 1
    assert [r.purpose for r in backend.requests].count("repair") == 1
    assert result.correct == (True, True)


def test_failed_repair_keeps_accepted_to_the_good_candidate(fixtures, index):
    fx = fixtures[3]
    backend = backend_for([fx], inject_bad_for={fx.problem.rule_pos}, repair_works=False)
    fold = make_fold(fx.problem, 1)
    result = run_fold(fx.problem, fx.problem.rule_pos, fold, backend, index, CFG, seed=2)
    assert result.accepted_size == 1
    assert result.correct == (True, True)


def test_fold_aborts_on_oracle_outage(fixtures, index):
    def dead(req):
        raise OracleUnavailable("endpoint down")

    fx = fixtures[0]
    fold = make_fold(fx.problem, 0)
    result = run_fold(fx.problem, fx.problem.rule_pos, fold, ScriptedBackend(dead), index, CFG, seed=0)
    assert result.aborted
    assert result.path == "aborted"


def test_temperature_routing_through_pipeline(fixtures, index):
    fx = fixtures[0]
    backend = backend_for([fx], inject_bad_for={fx.problem.rule_pos})
    run_fold(fx.problem, fx.problem.rule_pos, make_fold(fx.problem, 0), backend, index, CFG, seed=3)
    for req in backend.requests:
        expected = 1.0 if req.purpose == "hypotheses" else 0.5
        assert req.temperature == expected, req.purpose


# --- verification and inversion tasks --------------------------------------------


def test_verification_task_perfect_pipeline(fixtures, index):
    fx = fixtures[4]
    backend = backend_for([fx])
    outcome = run_verification_task(fx.problem, backend, index, CFG, seed=5)
    assert [f.holdout_index for f in outcome.folds] == [0, 1, 2, 3, 4, 5]
    assert outcome.accuracy == 1.0
    assert outcome.n_predictions == 12
    assert all(f.path == "programs" for f in outcome.folds)


def test_verification_task_all_negative_transduction_scores_half(fixtures, index):
    fx = fixtures[1]
    backend = backend_for([fx], garbage_synthesis=True)  # transduction answers NEGATIVE
    outcome = run_verification_task(fx.problem, backend, index, CFG, seed=5)
    assert all(f.path == "fallback" for f in outcome.folds)
    assert outcome.accuracy == 0.5  # negatives right, positives wrong


def test_verification_task_always_wrong_pipeline_scores_zero(fixtures, index):
    fx = fixtures[1]
    truth = FixtureResponder([fx], correct_transduction=True)

    class AlwaysWrong(FixtureResponder):
        def _transduction(self, req):
            right = truth._transduction(req)
            return "```NEGATIVE```" if "POSITIVE" in right else "```POSITIVE```"

    backend = ScriptedBackend(AlwaysWrong([fx], garbage_synthesis=True, correct_transduction=True))
    outcome = run_verification_task(fx.problem, backend, index, CFG, seed=5)
    assert outcome.accuracy == 0.0


def test_aborted_folds_excluded_from_accuracy_denominator(fixtures, index):
    fx = fixtures[0]
    calls = {"n": 0}
    good = FixtureResponder([fx])

    def flaky(req):
        calls["n"] += 1
        if req.purpose == "stubs" and calls["n"] == 1:
            raise OracleUnavailable("transient outage")
        return good(req)

    outcome = run_verification_task(fx.problem, ScriptedBackend(flaky), index, CFG, seed=5)
    assert outcome.n_aborted == 1
    assert outcome.n_predictions == 10
    assert outcome.accuracy == 1.0  # the remaining folds were all correct


def test_verification_requires_ground_truth_rule(fixtures, index):
    from dataclasses import replace

    fx = fixtures[0]
    bare = replace(fx.problem, rule_pos=None)
    with pytest.raises(InvalidInput):
        run_verification_task(bare, backend_for([fx]), index, CFG, seed=0)


def test_verification_accuracy_is_a_twelfth_multiple(fixtures, index):
    fx = fixtures[2]
    backend = backend_for([fx], garbage_synthesis=True, correct_transduction=True)
    outcome = run_verification_task(fx.problem, backend, index, CFG, seed=9)
    assert outcome.accuracy in {i / 12 for i in range(13)}


def test_inversion_task_symmetric_accuracy(fixtures, index):
    fx = fixtures[5]
    outcome = run_verification_task(fx.problem, backend_for([fx]), index, CFG, seed=6)
    inverted = run_inversion_task(fx.problem, backend_for([fx]), index, CFG, seed=6)
    assert inverted.task == "invert"
    assert inverted.accuracy == outcome.accuracy == 1.0


def test_inversion_prompts_swap_concepts(fixtures, index):
    fx = fixtures[5]
    backend = backend_for([fx])
    run_inversion_task(fx.problem, backend, index, CFG, seed=6)
    synth = [r for r in backend.requests if r.purpose == "synthesis"][0]
    text = "\n".join(t.text for t in synth.turns)
    assert f"positive concept {fx.problem.rule_neg}" in text
    assert f"which represent the concept {fx.problem.rule_pos}\n" in text


# --- solution task ------------------------------------------------------------------


def test_score_rule_perfect_program(fixtures, index):
    fx = fixtures[0]
    backend = backend_for([fx])
    result = score_rule_for_solution(fx.problem.rule_pos, fx.problem, backend, index, CFG, seed=1)
    assert result.path == "programs"
    assert result.score == 1.0
    assert (result.train_correct, result.test_correct) == (10, 2)


def test_score_rule_fallback_formula(fixtures, index):
    fx = fixtures[0]
    backend = backend_for([fx], garbage_synthesis=True)  # all-NEGATIVE transduction
    result = score_rule_for_solution(fx.problem.rule_pos, fx.problem, backend, index, CFG, seed=1)
    assert result.path == "fallback"
    assert (result.train_correct, result.test_correct) == (5, 1)
    assert result.score == pytest.approx(6 / 12)
    # one cached oracle call per distinct image: 10 train + 2 test
    assert sum(1 for r in backend.requests if r.purpose == "transduction") == 12


def test_score_rule_nine_of_ten_train_both_tests_correct(index):
    # one deliberately small positive disk makes 9/10 the best reachable score
    def panel(r, cx):
        m = syn.blank(64)
        syn.draw_disk(m, cx, 32, r)
        return syn.to_image(m)

    from bpforge.verify import BongardProblem

    problem = BongardProblem(
        id=300,
        positives=(panel(15, 30), panel(16, 26), panel(15, 34), panel(16, 38), panel(15, 22), panel(4, 42)),
        negatives=tuple(panel(3 + (i % 2), 20 + 4 * i) for i in range(6)),
        rule_pos="large figures",
        rule_neg="small figures",
    )
    source = (
        "param area_threshold : float in (10, 4000)\n"
        "classify_image(image) :=\n"
        "  if exists c in components(image) : pixel_count(c) > area_threshold\n"
        "  then POSITIVE else NEGATIVE\n"
    )

    def responder(req):
        if req.purpose == "stubs":
            return "<objects>figure</objects>"
        if req.purpose in ("synthesis", "repair"):
            return f"```\n{source}```"
        return "```NEGATIVE```"

    result = score_rule_for_solution("large figures", problem, ScriptedBackend(responder), index, CFG, seed=4)
    assert result.train_correct == 9
    assert result.test_correct == 2
    assert result.score == pytest.approx(11 / 12)


def test_solve_problem_ranks_ground_truth_first(fixtures, index):
    fx = fixtures[0]
    backend = backend_for([fx], hypothesis_fillers=5)
    ranked = solve_problem(fx.problem, [], backend, index, CFG, seed=8)
    assert len(ranked) == 12
    assert ranked[0].rule == fx.problem.rule_pos
    assert ranked[0].score == 1.0
    assert all(r.score <= ranked[0].score for r in ranked)


def test_solve_problem_tie_keeps_generation_order(fixtures_with_ambiguous, index):
    fx = fixtures_with_ambiguous[7]
    assert fx.ambiguous
    backend = backend_for(fixtures_with_ambiguous)
    ranked = solve_problem(fx.problem, [], backend, index, CFG, seed=8)
    assert ranked[0].rule == fx.decoy_rule  # generated first, same score
    assert ranked[0].score == 1.0
    truth = next(r for r in ranked if r.rule == fx.problem.rule_pos)
    assert truth.score == 1.0


def test_solve_problem_without_hypotheses(fixtures, index):
    fx = fixtures[0]

    def responder(req):
        if req.purpose == "hypotheses":
            return "nothing useful"
        return "<objects>figure</objects>"

    with pytest.raises(NoHypotheses):
        solve_problem(fx.problem, [], ScriptedBackend(responder), index, CFG, seed=0)
