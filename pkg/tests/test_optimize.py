"""Bayesian optimization tests: EI closed form, budget discipline,
determinism, and search quality against grid oracles."""

import numpy as np
import pytest

from bpforge import synthetic as syn
from bpforge.dsl import parse_program
from bpforge.dsl.ast import Label, ParamSpec
from bpforge.optimize import (
    OptBudget,
    SurrogateState,
    expected_improvement,
    maximize,
    optimize_params,
    suggest_next,
)

SEPARABLE_PROGRAM = parse_program(
    "param t : float in (0, 1)\n"
    "classify_image(image) := if total_ink_length(image) > t then POSITIVE else NEGATIVE"
)


def separable_train(side=96):
    """5 long-stroke positives (~0.7 normalized) and 5 short negatives (~0.2)."""
    pos = [(syn.stroke_panel(1.0, side=side, y=14 + 6 * i), Label.POSITIVE) for i in range(5)]
    neg = []
    for i in range(5):
        m = syn.blank(side)
        syn.draw_line(m, 4, 40 + 5 * i, 4 + int(side * 0.27), 40 + 5 * i)
        neg.append((syn.to_image(m), Label.NEGATIVE))
    return pos + neg


# --- expected improvement -----------------------------------------------------


def test_ei_zero_when_no_improvement_and_no_variance():
    assert expected_improvement(0.5, 0.0, 0.5) == 0.0


def test_ei_deterministic_improvement():
    assert expected_improvement(0.7, 0.0, 0.5) == pytest.approx(0.2)


def test_ei_standard_normal_matches_quadrature_oracle():
    # oracle: EI = integral of max(x, 0) * pdf(x) over the real line
    xs = np.linspace(-8, 8, 200001)
    pdf = np.exp(-0.5 * xs**2) / np.sqrt(2 * np.pi)
    oracle = np.trapezoid(np.maximum(xs, 0.0) * pdf, xs)
    assert expected_improvement(0.0, 1.0, 0.0) == pytest.approx(oracle, abs=1e-6)
    assert expected_improvement(0.0, 1.0, 0.0) == pytest.approx(0.3989, abs=1e-4)


def test_ei_vectorized_matches_scalar():
    means = np.array([0.1, 0.5, 0.9])
    stds = np.array([0.0, 0.2, 0.0])
    vec = expected_improvement(means, stds, 0.5)
    assert list(vec) == [expected_improvement(m, s, 0.5) for m, s in zip(means, stds)]


# --- suggest_next --------------------------------------------------------------


def test_suggestion_stays_in_bounds():
    specs = (ParamSpec("a", "float", -3.0, 2.0), ParamSpec("n", "int", 1, 9))
    state = SurrogateState([[0.5, 0.5]], [0.4])
    for seed in range(10):
        b = suggest_next(state, specs, seed)
        assert -3.0 <= b["a"] <= 2.0
        assert 1 <= b["n"] <= 9 and isinstance(b["n"], int)


def test_suggestion_never_repeats_observed_point():
    specs = (ParamSpec("n", "int", 1, 4),)
    # three of four int values observed; the suggestion must not repeat them
    state = SurrogateState([[0.0], [1 / 3], [2 / 3]], [0.2, 0.9, 0.4])
    observed = {1, 2, 3}
    for seed in range(20):
        b = suggest_next(state, specs, seed)
        assert b["n"] == 4 or b["n"] not in observed


def test_saturated_scores_still_yield_feasible_suggestion():
    specs = (ParamSpec("t", "float", 0.0, 1.0),)
    state = SurrogateState([[0.2], [0.8]], [1.0, 1.0])
    b = suggest_next(state, specs, seed=0)
    assert 0.0 <= b["t"] <= 1.0


# --- maximize / optimize_params ------------------------------------------------


def test_trace_running_best_is_monotone():
    def bumpy(b):
        return 0.5 + 0.4 * np.sin(7 * b["t"])

    _, _, trace = maximize(bumpy, [ParamSpec("t", "float", 0.0, 1.0)], OptBudget(15, 5), seed=3)
    best = -1.0
    for i, (_, score) in enumerate(trace.evaluations):
        best = max(best, score)
        assert trace.evaluations[trace.best_index][1] >= score
    assert trace.best_score == best


def test_short_circuit_on_perfect_score():
    calls = []

    def objective(b):
        calls.append(b)
        return 1.0

    _, score, trace = maximize(objective, [ParamSpec("t", "float", 0, 1)], OptBudget(15, 5), seed=0)
    assert score == 1.0
    assert len(calls) == 1 and len(trace.evaluations) == 1


def test_seeded_determinism():
    train = separable_train()
    runs = [optimize_params(SEPARABLE_PROGRAM, train, OptBudget(15, 5), seed=123) for _ in range(2)]
    assert runs[0][0] == runs[1][0]
    assert runs[0][1] == runs[1][1]
    assert runs[0][2].evaluations == runs[1][2].evaluations


def test_zero_param_program_gets_single_eval():
    prog = parse_program("classify_image(image) := if size(components(image)) == 1 then POSITIVE else NEGATIVE")
    m = syn.blank(30)
    syn.draw_disk(m, 15, 15, 6)
    train = [(syn.to_image(m), Label.POSITIVE)]
    bindings, score, trace = optimize_params(prog, train, OptBudget(15, 5), seed=0)
    assert bindings == {} and score == 1.0 and len(trace.evaluations) == 1


def test_all_positive_train_with_constant_positive_program():
    prog = parse_program("classify_image(image) := POSITIVE")
    train = [(syn.stroke_panel(0.5), Label.POSITIVE)] * 4
    _, score, trace = optimize_params(prog, train, OptBudget(15, 5), seed=0)
    assert score == 1.0 and len(trace.evaluations) == 1


def test_inseparable_train_capped_at_half():
    img = syn.stroke_panel(0.5)
    train = [(img, Label.POSITIVE), (img, Label.NEGATIVE)]
    _, score, _ = optimize_params(SEPARABLE_PROGRAM, train, OptBudget(15, 5), seed=0)
    assert score <= 0.5


def test_separable_family_reaches_gap():
    train = separable_train()
    # grid oracle: every threshold inside the observed gap scores 1.0
    from bpforge.verify.scoring import score_program

    grid = np.linspace(0.01, 0.99, 200)
    gap = [t for t in grid if score_program(SEPARABLE_PROGRAM, {"t": t}, train) == 1.0]
    assert gap and min(gap) > 0.15 and max(gap) < 0.75

    bindings, score, _ = optimize_params(SEPARABLE_PROGRAM, train, OptBudget(15, 5), seed=11)
    assert score == 1.0
    assert min(gap) - 0.01 <= bindings["t"] <= max(gap) + 0.01


def test_every_evaluated_binding_lies_in_box():
    specs = [ParamSpec("a", "float", -1.0, 3.0), ParamSpec("n", "int", 2, 7)]

    def objective(b):
        assert -1.0 <= b["a"] <= 3.0
        assert 2 <= b["n"] <= 7 and isinstance(b["n"], int)
        return 0.3

    _, _, trace = maximize(objective, specs, OptBudget(12, 4), seed=5)
    assert len(trace.evaluations) == 12
