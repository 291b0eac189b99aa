"""Finite windows of the rolled-out idle interval graph.

Unrolling the periodic schedule onto the time line ``[0, inf)`` turns each
idle interval into one copy per period and each task into one arc per
occurrence.  A window keeps the copies of periods ``0..r-1``.  An interval
or task that wraps a period boundary belongs to the period of its start.
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Optional

import numpy as np

from ._disjoint_set import DisjointSet
from .core import Instance, InvariantViolation, load_profile
from .fair import IdleInterval, IdleIntervalGraph, idle_interval_graph


@dataclass(frozen=True)
class RolledNode:
    base: int
    period_index: int
    start: int
    end: int


@dataclass(frozen=True)
class RolledArc:
    task_id: int
    tail: int
    head: Optional[int]
    head_base: int
    head_period: int
    start: int
    end: int

    @property
    def dangling(self) -> bool:
        return self.head is None


@dataclass(frozen=True)
class RolledOutGraph:
    window: int
    period: int
    nodes: tuple[RolledNode, ...]
    arcs: tuple[RolledArc, ...]
    # period offset (head period - tail period) of every task, by task id
    offsets: dict

    def quotient(self) -> tuple[dict, dict]:
        """Multiplicity of every periodic node and of every labelled periodic
        arc ``(task_id, tail_base, head_base)``."""
        node_count: dict = {}
        for v in self.nodes:
            node_count[v.base] = node_count.get(v.base, 0) + 1
        arc_count: dict = {}
        for e in self.arcs:
            key = (e.task_id, self.nodes[e.tail].base, e.head_base)
            arc_count[key] = arc_count.get(key, 0) + 1
        return node_count, arc_count

    def has_directed_cycle(self) -> bool:
        """Cycle test ignoring self-loops (tasks lying inside one idle
        interval copy stay at the same node)."""
        ts = TopologicalSorter({v: set() for v in range(len(self.nodes))})
        for e in self.arcs:
            if e.head is not None and e.head != e.tail:
                ts.add(e.head, e.tail)
        try:
            tuple(ts.static_order())
        except CycleError:
            return True
        return False

    def interior(self) -> list[int]:
        """Nodes whose every in- and out-arc of the unbounded roll-out has
        its other end inside the window."""
        in_off: dict = {}
        out_off: dict = {}
        for e in self.arcs:
            base = self.nodes[e.tail].base
            d = self.offsets[e.task_id]
            out_off[base] = max(out_off.get(base, 0), d)
            in_off[e.head_base] = max(in_off.get(e.head_base, 0), d)
        return [
            k
            for k, v in enumerate(self.nodes)
            if v.period_index - in_off.get(v.base, 0) >= 0
            and v.period_index + out_off.get(v.base, 0) < self.window
        ]

    def _window_sets(self) -> DisjointSet:
        ds = DisjointSet(len(self.nodes))
        for e in self.arcs:
            if e.head is not None:
                ds.union(e.tail, e.head)
        return ds

    def components(self) -> int:
        """Number of weak components of the window graph."""
        return self._window_sets().n_sets

    def interior_connected(self) -> bool:
        """Whether all interior nodes lie in one weak component of the window.

        Paths may pass through boundary nodes; those are still part of the
        window, only their neighbourhoods are truncated.
        """
        ds = self._window_sets()
        return len({ds.find(v) for v in self.interior()}) <= 1


def _lift(t: int, anchor: int, length: int, period: int) -> int:
    """Offset of ``t`` past ``anchor`` on the circle; must be within ``length``."""
    off = (t - anchor) % period
    if off > length:
        raise InvariantViolation(f"time {t} not inside interval at {anchor}")
    return off


def build_rollout(instance: Instance, r: int, graph: Optional[IdleIntervalGraph] = None) -> RolledOutGraph:
    """Replicate idle intervals and task arcs over ``r`` periods.

    Every task whose start lies in a node copy contributes one arc; arcs
    whose head copy falls in period ``r`` or later are kept as dangling.
    """
    if int(r) != r or r < 1:
        raise ValueError(f"window must be a positive integer, got {r}")
    T = instance.period
    if graph is None:
        graph = idle_interval_graph(instance)
    S = graph.nodes
    lengths = [s.length(T) for s in S]
    nodes = tuple(
        RolledNode(k, p, S[k].start + p * T, S[k].start + p * T + lengths[k])
        for p in range(r)
        for k in range(len(S))
    )
    index = {(v.base, v.period_index): i for i, v in enumerate(nodes)}
    offsets = {}
    placed = []
    for tid, tail, head, a, dur in zip(
        graph.task_ids.tolist(),
        graph.tails.tolist(),
        graph.heads.tolist(),
        instance.starts.tolist(),
        instance.durations.tolist(),
    ):
        start = S[tail].start + _lift(a, S[tail].start, lengths[tail], T)
        end = start + dur
        q, rest = divmod(end - S[head].start, T)
        if rest > lengths[head] or q < 0:
            raise InvariantViolation(f"task {tid} does not end inside its idle interval")
        offsets[tid] = q
        placed.append((tid, tail, head, start, end, q))
    arcs = []
    for p in range(r):
        for tid, tail, head, start, end, q in placed:
            hp = p + q
            arcs.append(
                RolledArc(
                    task_id=tid,
                    tail=index[(tail, p)],
                    head=index.get((head, hp)),
                    head_base=head,
                    head_period=hp,
                    start=start + p * T,
                    end=end + p * T,
                )
            )
    return RolledOutGraph(r, T, nodes, tuple(arcs), offsets)


def check_connectivity_equivalence(instance: Instance, r: int) -> bool:
    """Whether the window's interior is weakly connected exactly when the
    periodic idle interval graph is.

    A window whose interior misses some periodic idle interval entirely is
    too short to say anything and counts as agreeing (see
    :func:`window_is_informative`).
    """
    if r < 2:
        raise ValueError("connectivity comparison needs a window of at least 2 periods")
    graph = idle_interval_graph(instance)
    rolled = build_rollout(instance, r, graph)
    if not window_is_informative(rolled, graph):
        return True
    return rolled.interior_connected() == graph.is_weakly_connected()


def window_is_informative(rolled: RolledOutGraph, graph: IdleIntervalGraph) -> bool:
    """Whether every periodic idle interval has an interior copy in the window."""
    bases = {rolled.nodes[v].base for v in rolled.interior()}
    return len(bases) == len(graph.nodes)


def balanced_min_workers(instance: Instance) -> int:
    """Fewest workers of any balanced (possibly aperiodic) assignment: the
    load if the idle interval graph is weakly connected, else one more."""
    L = load_profile(instance).load
    return L if idle_interval_graph(instance).is_weakly_connected() else L + 1
