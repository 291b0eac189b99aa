"""Periodic task assignment: worker-minimal and fair rosters."""

from .core import (
    Assignment,
    CycleDecomposition,
    Instance,
    InvalidAssignmentError,
    InvalidInstanceError,
    InvariantViolation,
    LoadProfile,
    SolveReport,
    Task,
    decompose,
    duration,
    load_profile,
    mod_period,
    transition_cost,
    transition_profile,
)
from .estimator import PeriodicAssigner
from .fair import (
    IdleInterval,
    IdleIntervalGraph,
    idle_interval_graph,
    idle_intervals,
    is_fair_feasible_at_load,
    nearest_neighbor,
    patching,
    price_of_fairness,
)
from .pap import check_optimality_conditions, shift_sort_and_match
from .rollout import balanced_min_workers, build_rollout, check_connectivity_equivalence

__version__ = "0.1.0"
