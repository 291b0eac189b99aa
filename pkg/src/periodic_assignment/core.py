"""Circular-time arithmetic, the instance model and assignment accounting.

All times are integers on a circle of circumference ``period``.  A task is
the open interval ``(start, end)`` taken modulo the period, so a task with
``start > end`` wraps around the origin.

Load levels are stored region-wise.  For sorted distinct event times
``p_0 < ... < p_{m-1}`` the circle splits into ``2m`` regions, alternating
between an event point and the open gap that follows it::

    region 2k     -> the point p_k
    region 2k + 1 -> the gap (p_k, p_{k+1})   (the last gap wraps to p_0)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class InvalidInstanceError(ValueError):
    """Raised when an instance violates the task model."""


class InvalidAssignmentError(ValueError):
    """Raised when a successor map is not a permutation of the task ids."""


class InvariantViolation(RuntimeError):
    """An internal guarantee failed; indicates a bug, never bad input."""


def mod_period(x: int, period: int) -> int:
    """Return ``x`` reduced into ``[0, period)``, also for negative ``x``."""
    return x % period


@dataclass(frozen=True)
class Task:
    id: int
    start: int
    end: int

    def duration(self, period: int) -> int:
        return (self.end - self.start) % period


def duration(task: Task, period: int) -> int:
    return (task.end - task.start) % period


def transition_cost(i: Task, j: Task, period: int) -> int:
    """Idle time of a worker who finishes ``i`` and then starts ``j``."""
    return (j.start - i.end) % period


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Instance:
    """A period and a non-empty list of tasks.

    Tasks given as ``(start, end)`` pairs get ids ``1..n`` in order.  The
    task data is held in read-only integer arrays (``starts``, ``ends``,
    ``ids``); solvers work on array positions and translate back to ids at
    the boundary.
    """

    __slots__ = ("period", "starts", "ends", "ids", "_pos", "_tasks")

    def __init__(self, period: int, tasks: Iterable[Task | Sequence[int]]):
        tasks = list(tasks)
        ids, starts, ends = [], [], []
        for k, t in enumerate(tasks, start=1):
            if isinstance(t, Task):
                ids.append(t.id)
                starts.append(t.start)
                ends.append(t.end)
            else:
                a, b = t
                ids.append(k)
                starts.append(a)
                ends.append(b)
        self._init(period, starts, ends, ids)

    @classmethod
    def from_arrays(cls, period, starts, ends, ids=None) -> "Instance":
        self = cls.__new__(cls)
        if ids is None:
            ids = np.arange(1, len(starts) + 1)
        self._init(period, starts, ends, ids)
        return self

    def _init(self, period, starts, ends, ids):
        if isinstance(period, bool) or int(period) != period or period < 1:
            raise InvalidInstanceError(f"period must be a positive integer, got {period!r}")
        period = int(period)
        starts = np.asarray(starts)
        ends = np.asarray(ends)
        ids = np.asarray(ids)
        if starts.size == 0:
            raise InvalidInstanceError("an instance needs at least one task")
        if not (starts.shape == ends.shape == ids.shape) or starts.ndim != 1:
            raise InvalidInstanceError("starts, ends and ids must be 1-d arrays of equal length")
        for name, a in (("start", starts), ("end", ends), ("id", ids)):
            if a.dtype.kind not in "iu":
                if a.dtype.kind == "f" and np.all(np.mod(a, 1) == 0):
                    continue
                raise InvalidInstanceError(f"task {name} values must be integers")
        starts = starts.astype(np.int64)
        ends = ends.astype(np.int64)
        ids = ids.astype(np.int64)
        for name, a in (("start", starts), ("end", ends)):
            bad = np.flatnonzero((a < 0) | (a >= period))
            if bad.size:
                k = bad[0]
                raise InvalidInstanceError(
                    f"task {ids[k]}: {name} {a[k]} outside [0, {period})"
                )
        bad = np.flatnonzero(starts == ends)
        if bad.size:
            raise InvalidInstanceError(f"task {ids[bad[0]]}: start equals end (zero duration)")
        if np.any(ids < 0):
            raise InvalidInstanceError(f"task id {ids[ids < 0][0]} is negative")
        uniq, counts = np.unique(ids, return_counts=True)
        if uniq.size != ids.size:
            raise InvalidInstanceError(f"duplicate task id {uniq[counts > 1][0]}")
        self.period = period
        self.starts = _readonly(starts)
        self.ends = _readonly(ends)
        self.ids = _readonly(ids)
        self._pos = None
        self._tasks = None

    @property
    def n(self) -> int:
        return int(self.starts.size)

    def __len__(self) -> int:
        return self.n

    @property
    def tasks(self) -> tuple[Task, ...]:
        if self._tasks is None:
            self._tasks = tuple(
                Task(int(i), int(a), int(b))
                for i, a, b in zip(self.ids, self.starts, self.ends)
            )
        return self._tasks

    def position(self, task_id: int) -> int:
        """Array position of ``task_id``; raises ``KeyError`` if unknown."""
        if self._pos is None:
            self._pos = {int(i): k for k, i in enumerate(self.ids)}
        return self._pos[int(task_id)]

    def task(self, task_id: int) -> Task:
        return self.tasks[self.position(task_id)]

    @property
    def durations(self) -> np.ndarray:
        return (self.ends - self.starts) % self.period

    @property
    def total_duration(self) -> int:
        return int(self.durations.sum())

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.period == other.period
            and np.array_equal(self.ids, other.ids)
            and np.array_equal(self.starts, other.starts)
            and np.array_equal(self.ends, other.ends)
        )

    __hash__ = None

    def __repr__(self):
        if self.n <= 6:
            body = ", ".join(f"{t.id}:({t.start},{t.end})" for t in self.tasks)
        else:
            body = f"n={self.n}"
        return f"Instance(period={self.period}, {body})"


@dataclass(frozen=True)
class LoadProfile:
    """Number of active tasks on every region of the circle.

    ``levels`` has length ``2 * len(points)``; see the module docstring for
    the region indexing.  ``witness`` is the index of a gap region whose
    level equals ``load``.
    """

    period: int
    points: np.ndarray
    levels: np.ndarray
    load: int
    witness: int

    @property
    def n_regions(self) -> int:
        return int(self.levels.size)

    def point_region(self, t) -> np.ndarray | int:
        """Region index of event time(s) ``t``."""
        k = np.searchsorted(self.points, t)
        return 2 * k

    def level_at_point(self, t: int) -> int:
        k = int(np.searchsorted(self.points, t))
        if k >= self.points.size or self.points[k] != t:
            raise KeyError(f"{t} is not an event point")
        return int(self.levels[2 * k])

    def region_label(self, r: int) -> str:
        m = self.points.size
        k = r // 2
        if r % 2 == 0:
            return f"{self.points[k]}"
        return f"({self.points[k]},{self.points[(k + 1) % m]})"


def load_profile(instance: Instance) -> LoadProfile:
    """Sweep the circle once and record the load on every region."""
    starts, ends = instance.starts, instance.ends
    n = starts.size
    points, where = np.unique(np.concatenate([starts, ends]), return_inverse=True)
    m = points.size
    n_start = np.bincount(where[:n], minlength=m)
    n_end = np.bincount(where[n:], minlength=m)
    # the gap that wraps from p_{m-1} to p_0 is covered exactly by the wrapping tasks
    origin = int(np.count_nonzero(starts > ends))
    gap_after = origin + np.cumsum(n_start - n_end)
    if gap_after[-1] != origin:
        raise InvariantViolation("sweep counter did not return to its origin value")
    gap_before = np.roll(gap_after, 1)
    levels = np.empty(2 * m, dtype=np.int64)
    levels[0::2] = gap_before - n_end
    levels[1::2] = gap_after
    load = int(levels.max())
    witness = int(2 * np.flatnonzero(gap_after == load)[0] + 1)
    return LoadProfile(instance.period, _readonly(points), _readonly(levels), load, witness)


class Assignment:
    """A successor permutation over the tasks of one instance.

    Stored positionally: ``next_positions[k]`` is the array position of the
    task performed after the task at position ``k``.  ``successor`` gives
    the same map keyed by task id.
    """

    __slots__ = ("ids", "next_positions")

    def __init__(self, ids: np.ndarray, next_positions):
        nxt = np.asarray(next_positions, dtype=np.int64)
        n = ids.size
        if nxt.shape != (n,):
            raise InvalidAssignmentError(f"expected {n} successors, got {nxt.size}")
        if n and (nxt.min() < 0 or nxt.max() >= n):
            raise InvalidAssignmentError("successor position out of range")
        if np.bincount(nxt, minlength=n).max(initial=0) > 1:
            raise InvalidAssignmentError("successor map is not a permutation")
        self.ids = ids
        self.next_positions = _readonly(nxt)

    @classmethod
    def from_mapping(cls, instance: Instance, mapping: Mapping[int, int]) -> "Assignment":
        if len(mapping) != instance.n:
            raise InvalidAssignmentError(
                f"successor map has {len(mapping)} entries for {instance.n} tasks"
            )
        nxt = np.empty(instance.n, dtype=np.int64)
        try:
            for src, dst in mapping.items():
                nxt[instance.position(src)] = instance.position(dst)
        except KeyError as exc:
            raise InvalidAssignmentError(f"unknown task id {exc.args[0]}") from None
        return cls(instance.ids, nxt)

    @property
    def successor(self) -> dict[int, int]:
        ids = self.ids.tolist()
        return dict(zip(ids, self.ids[self.next_positions].tolist()))

    def __len__(self):
        return int(self.ids.size)

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return np.array_equal(self.ids, other.ids) and np.array_equal(
            self.next_positions, other.next_positions
        )

    __hash__ = None

    def __repr__(self):
        if len(self) <= 8:
            return f"Assignment({self.successor})"
        return f"Assignment(n={len(self)})"


def transition_costs(assignment: Assignment, instance: Instance) -> np.ndarray:
    """Per-task cost of the outgoing transition arc."""
    nxt = assignment.next_positions
    return (instance.starts[nxt] - instance.ends) % instance.period


def cycle_labels(next_positions) -> tuple[np.ndarray, int]:
    """Label each position with the index of its orbit; return labels and count."""
    nxt = np.asarray(next_positions, dtype=np.int64)
    n = nxt.size
    if np.bincount(nxt, minlength=n).max(initial=0) > 1:
        raise InvalidAssignmentError("successor map is not a permutation")
    graph = csr_matrix((np.ones(n, dtype=np.int8), (np.arange(n), nxt)), shape=(n, n))
    count, labels = connected_components(graph, directed=False)
    return labels.astype(np.int64), int(count)


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[tuple[int, ...], ...]
    workers: tuple[int, ...]
    transition: tuple[int, ...]

    def __len__(self):
        return len(self.cycles)

    @property
    def total_workers(self) -> int:
        return sum(self.workers)


def decompose(assignment: Assignment, instance: Instance) -> CycleDecomposition:
    """Split the assignment into its orbits, each beginning at its lowest position."""
    if assignment.ids.size != instance.n:
        raise InvalidAssignmentError("assignment and instance sizes differ")
    nxt = assignment.next_positions.tolist()
    ids = instance.ids.tolist()
    dur = instance.durations.tolist()
    cost = transition_costs(assignment, instance).tolist()
    T = instance.period
    seen = [False] * len(nxt)
    cycles, workers, trans = [], [], []
    for s in range(len(nxt)):
        if seen[s]:
            continue
        orbit, c_tasks, c_trans = [], 0, 0
        k = s
        while not seen[k]:
            seen[k] = True
            orbit.append(ids[k])
            c_tasks += dur[k]
            c_trans += cost[k]
            k = nxt[k]
        if k != s:
            raise InvalidAssignmentError("successor map is not a permutation")
        total = c_tasks + c_trans
        if total % T:
            raise InvariantViolation(f"cycle length {total} is not a multiple of {T}")
        cycles.append(tuple(orbit))
        workers.append(total // T)
        trans.append(c_trans)
    return CycleDecomposition(tuple(cycles), tuple(workers), tuple(trans))


def transition_profile(
    assignment: Assignment, instance: Instance, profile: LoadProfile | None = None
) -> np.ndarray:
    """Number of transition arcs covering each region of ``profile``.

    Arc ``(i, j)`` occupies the closed circular interval ``[end_i, start_j]``;
    a zero-cost arc covers only the point ``end_i``.
    """
    if profile is None:
        profile = load_profile(instance)
    R = profile.n_regions
    nxt = assignment.next_positions
    rb = profile.point_region(instance.ends)
    ra = profile.point_region(instance.starts[nxt])
    diff = np.zeros(R + 1, dtype=np.int64)
    fwd = rb <= ra
    np.add.at(diff, rb, 1)
    np.add.at(diff, ra[fwd] + 1, -1)
    wrap = ~fwd
    diff[R] -= np.count_nonzero(wrap)
    diff[0] += np.count_nonzero(wrap)
    np.add.at(diff, ra[wrap] + 1, -1)
    return np.cumsum(diff[:R])


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solver run.

    ``workers * period == total_duration + total_transition`` always holds,
    and ``fair`` is true exactly when the assignment is a single cycle.
    """

    assignment: Assignment
    total_transition: int
    workers: int
    cycle_count: int
    fair: bool
    load: int
    method: str = field(default="", compare=False)


def build_report(instance: Instance, next_positions, load: int, method: str = "") -> SolveReport:
    assignment = Assignment(instance.ids, next_positions)
    total = int(transition_costs(assignment, instance).sum())
    busy = instance.total_duration + total
    if busy % instance.period:
        raise InvariantViolation(f"{busy} time units is not a whole number of periods")
    _, count = cycle_labels(assignment.next_positions)
    return SolveReport(
        assignment=assignment,
        total_transition=total,
        workers=busy // instance.period,
        cycle_count=count,
        fair=count == 1,
        load=load,
        method=method,
    )
