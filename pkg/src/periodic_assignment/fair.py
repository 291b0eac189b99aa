"""Fair periodic assignments: every worker cycles through every task.

A fair assignment is a single Hamiltonian cycle over the tasks.  It always
exists with ``L + 1`` workers (nearest neighbor finds one), and with ``L``
workers exactly when the idle interval graph is weakly connected.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from ._disjoint_set import DisjointSet
from .core import (
    Instance,
    InvariantViolation,
    LoadProfile,
    SolveReport,
    build_report,
    cycle_labels,
    load_profile,
)
from .pap import event_sequence, match_events


def nearest_neighbor(instance: Instance, start_task: Optional[int] = None) -> SolveReport:
    """Greedy tour: always move on to the unvisited task with the earliest
    start at or after the current end (circularly).

    Uses at most ``L + 1`` workers.  Equal start times are broken by the
    smaller task id; ``start_task`` defaults to the smallest id.
    """
    n = instance.n
    if start_task is None:
        first = int(np.argmin(instance.ids))
    else:
        try:
            first = instance.position(start_task)
        except KeyError:
            raise ValueError(f"unknown start task {start_task}") from None
    order = np.lexsort((instance.ids, instance.starts))
    sorted_starts = instance.starts[order].tolist()
    order = order.tolist()
    rank = [0] * n
    for r, k in enumerate(order):
        rank[k] = r
    ends = instance.ends.tolist()
    # nxt_free[r] -> smallest unvisited rank >= r (n means none)
    nxt_free = list(range(n + 1))

    def find(r):
        root = r
        while nxt_free[root] != root:
            root = nxt_free[root]
        while nxt_free[r] != root:
            nxt_free[r], r = root, nxt_free[r]
        return root

    nxt = [-1] * n
    cur = first
    nxt_free[rank[cur]] = rank[cur] + 1
    for _ in range(n - 1):
        r = find(bisect_left(sorted_starts, ends[cur]))
        if r == n:
            r = find(0)
        v = order[r]
        nxt_free[r] = r + 1
        nxt[cur] = v
        cur = v
    nxt[cur] = first
    return build_report(instance, nxt, load_profile(instance).load, method="nearest-neighbor")


@dataclass(frozen=True)
class IdleInterval:
    """Maximal closed circular interval ``[start, end]`` with load below L.

    ``start`` is the end time of some task and ``end`` the start time of
    some task.  The interval wraps the origin when ``end < start`` and is a
    single point when they are equal.
    """

    start: int
    end: int

    def length(self, period: int) -> int:
        return (self.end - self.start) % period

    def __str__(self):
        return f"[{self.start},{self.end}]"


def _idle_regions(profile: LoadProfile) -> tuple[list[IdleInterval], np.ndarray]:
    """Idle intervals sorted by start time, and the node index of every region
    (-1 on regions at full load)."""
    levels = profile.levels
    R = levels.size
    below = levels < profile.load
    if below.all():
        raise InvariantViolation("load is never attained")
    # rotate so that position 0 follows a full-load region
    shift = profile.witness + 1
    rot = np.roll(below, -shift)
    prev = np.concatenate([[False], rot[:-1]])
    nxt = np.concatenate([rot[1:], [False]])
    first = np.flatnonzero(rot & ~prev)
    last = np.flatnonzero(rot & ~nxt)
    first_reg = (first + shift) % R
    last_reg = (last + shift) % R
    if np.any(first_reg % 2) or np.any(last_reg % 2):
        raise InvariantViolation("idle interval bounded by a gap instead of a point")
    starts = profile.points[first_reg // 2]
    ends = profile.points[last_reg // 2]
    by_start = np.argsort(starts, kind="stable")
    relabel = np.empty_like(by_start)
    relabel[by_start] = np.arange(by_start.size)
    run_id = np.cumsum(rot & ~prev) - 1
    node_rot = np.where(rot, relabel[np.maximum(run_id, 0)], -1)
    node = np.roll(node_rot, shift)
    intervals = [IdleInterval(int(starts[k]), int(ends[k])) for k in by_start]
    return intervals, node


def idle_intervals(instance: Instance) -> list[IdleInterval]:
    return _idle_regions(load_profile(instance))[0]


@dataclass(frozen=True)
class IdleIntervalGraph:
    """Directed multigraph with one arc per task, from the idle interval
    holding the task's start to the one holding its end."""

    nodes: tuple[IdleInterval, ...]
    tails: np.ndarray
    heads: np.ndarray
    task_ids: np.ndarray

    @property
    def n_arcs(self) -> int:
        return int(self.tails.size)

    def arcs(self) -> list[tuple[int, int, int]]:
        """``(task_id, tail_node, head_node)`` triples."""
        return list(zip(self.task_ids.tolist(), self.tails.tolist(), self.heads.tolist()))

    def components(self) -> list[list[int]]:
        ds = DisjointSet(len(self.nodes))
        for t, h in zip(self.tails.tolist(), self.heads.tolist()):
            ds.union(t, h)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.nodes)):
            groups.setdefault(ds.find(v), []).append(v)
        return list(groups.values())

    def is_weakly_connected(self) -> bool:
        return len(self.components()) == 1


def idle_interval_graph(instance: Instance) -> IdleIntervalGraph:
    profile = load_profile(instance)
    intervals, node = _idle_regions(profile)
    tails = node[profile.point_region(instance.starts)]
    heads = node[profile.point_region(instance.ends)]
    if np.any(tails < 0) or np.any(heads < 0):
        raise InvariantViolation("a task endpoint lies outside every idle interval")
    return IdleIntervalGraph(tuple(intervals), tails, heads, instance.ids.copy())


def is_fair_feasible_at_load(instance: Instance) -> bool:
    """True iff a fair assignment with exactly L workers exists."""
    return idle_interval_graph(instance).is_weakly_connected()


@dataclass
class PatchingTrace:
    """Instrumentation for :func:`patching`; pass an empty one to collect.

    Recording is O(n) per arc, so only use it on small instances.
    """

    exchanges: list[dict] = field(default_factory=list)
    dominance_ok: bool = True
    first_arc_opens_interval: Optional[bool] = None
    initial_cycles: int = 0
    fell_back: bool = False


def _cycle_count(nxt) -> int:
    return cycle_labels(nxt)[1]


def patching(instance: Instance, *, trace: Optional[PatchingTrace] = None) -> SolveReport:
    """Optimal fair assignment in O(n log n).

    Start from a worker-minimal assignment and sweep its transition arcs by
    start time.  Whenever the current arc overlaps the running patching arc
    and the two lie on different cycles, swap their heads; this merges the
    cycles at no cost.  If more than one cycle survives, no fair assignment
    with L workers exists and nearest neighbor (L + 1 workers) is optimal.
    """
    T = instance.period
    profile = load_profile(instance)
    events = event_sequence(instance, profile)
    nxt = match_events(events)
    cut = events.cut_time
    # coordinates relative to the cut: no arc of the matching crosses it
    b = ((instance.ends - cut) % T).tolist()
    a = ((instance.starts - cut) % T).tolist()
    n = instance.n
    for i in range(n):
        if a[nxt[i]] < b[i]:
            raise InvariantViolation(f"arc from task position {i} crosses the cut")

    labels, cycles = cycle_labels(nxt)
    registry = DisjointSet.from_labels(labels.tolist())
    parent = registry.parent

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    head_a = np.asarray(a)[np.asarray(nxt)]
    order = np.lexsort((instance.ids, head_a, np.asarray(b))).tolist()

    if trace is not None:
        trace.initial_cycles = cycles
        _, node = _idle_regions(profile)
        first_point = profile.point_region(int(instance.ends[order[0]]))
        trace.first_arc_opens_interval = bool(
            node[first_point] >= 0 and node[(first_point - 1) % profile.n_regions] < 0
        )
        running_max = a[nxt[order[0]]]

    i = order[0]
    aj = a[nxt[i]]
    for k in order[1:]:
        if cycles == 1 and trace is None:
            break
        l = nxt[k]
        al = a[l]
        if b[k] > aj:
            i, aj = k, al
            if trace is not None:
                running_max = al
            continue
        rk, ri = find(k), find(i)
        if rk != ri:
            if trace is not None:
                cost_before = _cost(nxt, a, b, T)
                cycles_before = _cycle_count(nxt)
            j = nxt[i]
            nxt[i] = l
            nxt[k] = j
            registry.union(rk, ri)
            cycles -= 1
            if trace is not None:
                trace.exchanges.append(
                    dict(
                        removed=(i, j, k, l),
                        cost_before=cost_before,
                        cost_after=_cost(nxt, a, b, T),
                        cycles_before=cycles_before,
                        cycles_after=_cycle_count(nxt),
                    )
                )
            if aj > al:
                i = k
            else:
                aj = al
        elif al > aj:
            i, aj = k, al
        if trace is not None:
            running_max = max(running_max, al)
            if aj != running_max:
                trace.dominance_ok = False

    if cycles == 1:
        return build_report(instance, nxt, profile.load, method="patching")
    if trace is not None:
        trace.fell_back = True
    report = nearest_neighbor(instance)
    return SolveReport(
        assignment=report.assignment,
        total_transition=report.total_transition,
        workers=report.workers,
        cycle_count=report.cycle_count,
        fair=report.fair,
        load=report.load,
        method="patching+nearest-neighbor",
    )


def _cost(nxt, a, b, T) -> int:
    return sum((a[j] - b[i]) % T for i, j in enumerate(nxt))


class PriceOfFairness(NamedTuple):
    load: int
    fair_workers: int
    delta: int
    ratio: Fraction


def price_of_fairness(instance: Instance) -> PriceOfFairness:
    """Extra workers a fair assignment needs, absolute and relative to L."""
    report = patching(instance)
    delta = report.workers - report.load
    if delta not in (0, 1):
        raise InvariantViolation(f"fair optimum exceeds the load by {delta}")
    return PriceOfFairness(report.load, report.workers, delta, Fraction(delta, report.load))
