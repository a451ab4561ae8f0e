"""Layered dynamic programs over (proper) thin representations."""

from .check import brute_force, is_feasible, violations
from .engine import RunRecord, record_runs
from .proper import monotone_neighborhoods, proper_state_bound, solve_proper
from .spec import (
    INF,
    STAR,
    Bound,
    NeighborhoodBounds,
    ProblemSpec,
    Sense,
    Solution,
    SolverStats,
    all_combinations,
    simple_spec,
    validate_spec,
)
from .thin import solve, solve_on_complement, state_bound

__all__ = [
    "INF",
    "STAR",
    "Bound",
    "NeighborhoodBounds",
    "ProblemSpec",
    "RunRecord",
    "Sense",
    "Solution",
    "SolverStats",
    "all_combinations",
    "brute_force",
    "is_feasible",
    "monotone_neighborhoods",
    "proper_state_bound",
    "record_runs",
    "simple_spec",
    "solve",
    "solve_on_complement",
    "solve_proper",
    "state_bound",
    "validate_spec",
    "violations",
]
