"""Bayesian optimization of program parameters within a fixed budget."""

from .bo import OptBudget, OptTrace, maximize, optimize_params, suggest_next
from .gp import SurrogateState, expected_improvement

__all__ = [
    "OptBudget",
    "OptTrace",
    "SurrogateState",
    "expected_improvement",
    "maximize",
    "optimize_params",
    "suggest_next",
]
