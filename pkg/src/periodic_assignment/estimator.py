"""Estimator-style front end.

Tasks are rows of an ``(n, 2)`` integer array of (start, end) times.
Fitting solves the assignment; the cycles play the role of clusters, so
``fit_predict`` returns the cycle index of every task.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .core import cycle_labels
from .fair import nearest_neighbor, patching
from .oracle import fpap_oracle, pap_oracle
from .pap import shift_sort_and_match
from .render import render_schedule
from .validation import check_tasks

SOLVERS = {
    "shift-sort-match": shift_sort_and_match,
    "patching": patching,
    "nearest-neighbor": nearest_neighbor,
    "assignment-oracle": pap_oracle,
    "held-karp": fpap_oracle,
}
FAIR_SOLVERS = {"patching", "nearest-neighbor", "held-karp"}


class PeriodicAssigner(ClusterMixin, BaseEstimator):
    """Assign periodic tasks to a minimal number of workers.

    Parameters
    ----------
    period : int
        Length of the repeating schedule.
    fair : bool, default=False
        Require a single cycle through all tasks.  Only used to pick the
        solver when ``solver="auto"``.
    solver : str, default="auto"
        One of ``SOLVERS``; ``"auto"`` means ``"patching"`` when ``fair``
        and ``"shift-sort-match"`` otherwise.
    start_task : int, optional
        First task (row number) for ``"nearest-neighbor"``.

    Attributes
    ----------
    successor_ : ndarray of shape (n_tasks,)
        Row of the task each task's worker performs next.
    labels_ : ndarray of shape (n_tasks,)
        Cycle index of each task.
    n_workers_, load_, total_transition_, n_cycles_ : int
    report_ : SolveReport
    """

    def __init__(self, period=None, fair=False, solver="auto", start_task=None):
        self.period = period
        self.fair = fair
        self.solver = solver
        self.start_task = start_task

    def _solver_name(self):
        if self.solver == "auto":
            return "patching" if self.fair else "shift-sort-match"
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}; choose from {sorted(SOLVERS)}")
        if self.fair and self.solver not in FAIR_SOLVERS:
            raise ValueError(f"solver {self.solver!r} does not produce fair assignments")
        return self.solver

    def fit(self, X, y=None):
        if self.period is None:
            raise ValueError("period must be set")
        name = self._solver_name()
        instance = check_tasks(X, self.period)
        if name == "nearest-neighbor":
            report = nearest_neighbor(instance, self.start_task)
        else:
            report = SOLVERS[name](instance)
        self.instance_ = instance
        self.report_ = report
        self.successor_ = report.assignment.next_positions.copy()
        self.labels_, self.n_cycles_ = cycle_labels(self.successor_)
        self.n_workers_ = report.workers
        self.load_ = report.load
        self.total_transition_ = report.total_transition
        self.n_features_in_ = 2
        return self

    def schedule(self) -> str:
        check_is_fitted(self, "report_")
        return render_schedule(self.report_, self.instance_)
