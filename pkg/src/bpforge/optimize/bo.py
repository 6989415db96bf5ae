"""Budgeted Bayesian optimization over declared parameter boxes.

A run spends its budget on a scrambled low-discrepancy initial design
followed by expected-improvement acquisition over a 512-point candidate
set, and short-circuits as soon as a perfect score is observed. Integer
parameters are optimized in the relaxed box and rounded at evaluation
time. Everything is deterministic given the seed.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from ..dsl.ast import ClassifierProgram, ParamSpec
from ..seeds import derive
from .gp import SurrogateState, expected_improvement

logger = logging.getLogger(__name__)

N_CANDIDATES = 512
PERFECT_SCORE = 1.0


@dataclass(frozen=True)
class OptBudget:
    total_evals: int = 15
    init_design: int = 5

    def __post_init__(self):
        if not (1 <= self.init_design < self.total_evals):
            raise ValueError(f"need 1 <= init_design < total_evals, got {self.init_design}/{self.total_evals}")


@dataclass
class OptTrace:
    """Evaluation log: (bindings, score) pairs plus the index of the best."""

    evaluations: list = field(default_factory=list)
    best_index: int = 0

    def record(self, bindings: dict, score: float) -> None:
        self.evaluations.append((dict(bindings), float(score)))
        if score > self.evaluations[self.best_index][1]:
            self.best_index = len(self.evaluations) - 1

    @property
    def best_bindings(self) -> dict:
        return self.evaluations[self.best_index][0]

    @property
    def best_score(self) -> float:
        return self.evaluations[self.best_index][1]

    def to_records(self) -> list:
        return [{"bindings": b, "score": s} for b, s in self.evaluations]


def _materialize(unit_point, specs) -> dict:
    """Map a unit-cube point into declared ranges; ints round half up."""
    bindings = {}
    for u, spec in zip(unit_point, specs):
        value = spec.low + float(u) * (spec.high - spec.low)
        if spec.kind == "int":
            value = int(np.clip(np.floor(value + 0.5), spec.low, spec.high))
        else:
            value = float(np.clip(value, spec.low, spec.high))
        bindings[spec.name] = value
    return bindings


def _grid_step(spec: ParamSpec) -> float:
    return 1.0 if spec.kind == "int" else (spec.high - spec.low) / N_CANDIDATES


def _perturb_off_collision(bindings, specs, observed) -> dict:
    """Nudge by grid steps until the point is unobserved (or give up)."""
    def seen(b):
        return any(all(b[s.name] == prev[s.name] for s in specs) for prev in observed)

    if not seen(bindings):
        return bindings
    for magnitude in range(1, N_CANDIDATES + 1):
        for spec in specs:
            step = magnitude * _grid_step(spec)
            for direction in (1.0, -1.0):
                trial = dict(bindings)
                value = bindings[spec.name] + direction * step
                if spec.kind == "int":
                    value = int(value)
                if not (spec.low <= value <= spec.high):
                    continue
                trial[spec.name] = value
                if not seen(trial):
                    return trial
        if magnitude > 4 and all(s.kind == "int" and (s.high - s.low) < magnitude for s in specs):
            break  # box exhausted
    return bindings


def _sobol_points(d: int, n: int, seed: int):
    """First n scrambled-Sobol points (drawn at a power of two to keep
    the sequence's balance guarantees quiet)."""
    size = 1 << max(int(np.ceil(np.log2(n))), 0)
    return qmc.Sobol(d, scramble=True, seed=seed).random(size)[:n]


def suggest_next(state: SurrogateState, specs, seed: int) -> dict:
    """Maximize EI over a scrambled-Sobol candidate set; never repeat a point."""
    d = len(specs)
    candidates = _sobol_points(d, N_CANDIDATES, seed=seed)
    mean, stdev = state.posterior(candidates)
    ei = expected_improvement(mean, stdev, float(state.y.max()))
    pick = int(np.argmax(ei))
    bindings = _materialize(candidates[pick], specs)
    observed = [_materialize(x, specs) for x in state.X]
    return _perturb_off_collision(bindings, specs, observed)


def _to_unit(bindings, specs) -> np.ndarray:
    return np.array(
        [(bindings[s.name] - s.low) / (s.high - s.low) for s in specs], dtype=float
    )


def maximize(objective, specs, budget: OptBudget, seed: int):
    """Optimize a score function over parameter boxes.

    Returns (best_bindings, best_score, trace). ``objective`` maps a
    bindings dict to a score in [0, 1]; evaluation stops early once a
    perfect score is observed.
    """
    specs = tuple(specs)
    trace = OptTrace()
    if not specs:
        score = float(objective({}))
        trace.record({}, score)
        return {}, score, trace

    d = len(specs)
    init = _sobol_points(d, budget.init_design, seed=derive(seed, "init"))
    X: list = []
    y: list = []

    def run_one(unit_point, bindings):
        score = float(objective(bindings))
        X.append(unit_point)
        y.append(score)
        trace.record(bindings, score)
        return score

    for row in init:
        if run_one(row, _materialize(row, specs)) >= PERFECT_SCORE:
            return trace.best_bindings, trace.best_score, trace

    for step in range(budget.total_evals - budget.init_design):
        state = SurrogateState(np.vstack(X), np.array(y))
        bindings = suggest_next(state, specs, seed=derive(seed, "acq", step))
        if run_one(_to_unit(bindings, specs), bindings) >= PERFECT_SCORE:
            break
    return trace.best_bindings, trace.best_score, trace


def optimize_params(p: ClassifierProgram, train, budget: OptBudget, seed: int, score_fn=None):
    """Fit a program's declared parameters to maximize its training score.

    ``train`` is a sequence of (image, label) pairs. A program with no
    parameters is scored once, deterministically.
    """
    if score_fn is None:
        from ..verify.scoring import score_program

        score_fn = score_program
    objective = lambda bindings: score_fn(p, bindings, train)
    return maximize(objective, p.params, budget, seed)
