"""Worker-minimal periodic assignment by shift, sort and match."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import (
    Instance,
    InvariantViolation,
    LoadProfile,
    SolveReport,
    build_report,
    load_profile,
    transition_profile,
)

END, START = 0, 1


@dataclass(frozen=True)
class EventSequence:
    """All 2n task endpoints in processing order.

    Events are sorted by time with ends before starts at equal times (ties
    within a kind by task id), then rotated so that processing begins right
    after a maximal-load gap.  ``cut_time`` is the time of the first event
    after the rotation point.
    """

    times: np.ndarray
    kinds: np.ndarray
    owners: np.ndarray
    cut: int
    cut_time: int


def event_sequence(instance: Instance, profile: LoadProfile) -> EventSequence:
    n = instance.n
    by_id = np.argsort(instance.ids, kind="stable")
    owners = np.concatenate([by_id, by_id])
    times = np.concatenate([instance.ends[by_id], instance.starts[by_id]])
    kinds = np.repeat(np.array([END, START]), n)
    # stable sort on (time, kind) keeps the id order within ties
    order = np.argsort(2 * times + kinds, kind="stable")
    times, kinds, owners = times[order], kinds[order], owners[order]
    gap = profile.witness // 2
    cut_time = int(profile.points[(gap + 1) % profile.points.size])
    cut = int(np.searchsorted(times, cut_time, side="left"))
    return EventSequence(
        times=np.roll(times, -cut),
        kinds=np.roll(kinds, -cut),
        owners=np.roll(owners, -cut),
        cut=cut,
        cut_time=cut_time,
    )


def match_events(
    events: EventSequence, on_event: Optional[Callable[[int, int], None]] = None
) -> list[int]:
    """Run the stack loop and return successor positions.

    ``on_event(index, stack_size)`` is called before each loop step, with
    ``index`` the position in the rotated event order.
    """
    kinds = events.kinds.tolist()
    owners = events.owners.tolist()
    size = len(kinds)
    nxt = [-1] * (size // 2)
    stack = []
    i = 0
    while i < size:
        if on_event is not None:
            on_event(i, len(stack))
        if kinds[i] == START:
            if not stack:
                raise InvariantViolation(f"start event {i} found no unmatched end")
            nxt[stack.pop()] = owners[i]
            i += 1
        elif i + 1 < size and kinds[i + 1] == START:
            nxt[owners[i]] = owners[i + 1]
            i += 2
        elif i + 1 == size:
            raise InvariantViolation("event order ends with an unmatched end")
        else:
            stack.append(owners[i])
            i += 1
    if stack:
        raise InvariantViolation(f"{len(stack)} ends left unmatched")
    return nxt


def shift_sort_and_match(
    instance: Instance, *, on_event: Optional[Callable[[int, int], None]] = None
) -> SolveReport:
    """Compute a periodic assignment that uses exactly ``L`` workers.

    Runs in O(n log n).  The arcs never cross the rotation point, which
    lies inside a maximal-load gap, so the result is optimal.
    """
    profile = load_profile(instance)
    events = event_sequence(instance, profile)
    nxt = match_events(events, on_event)
    report = build_report(instance, nxt, profile.load, method="shift-sort-match")
    if report.workers != profile.load:
        raise InvariantViolation(
            f"matching uses {report.workers} workers, load is {profile.load}"
        )
    return report


@dataclass(frozen=True)
class OptimalityVerdict:
    """The equivalent optimality conditions evaluated on one assignment.

    ``matches_oracle`` is None unless an oracle cost was supplied.
    """

    matches_oracle: Optional[bool]
    cost_at_load_bound: bool
    flat_profile: bool
    has_free_region: bool

    @property
    def all_hold(self) -> bool:
        checks = [self.cost_at_load_bound, self.flat_profile, self.has_free_region]
        if self.matches_oracle is not None:
            checks.append(self.matches_oracle)
        return all(checks)


def check_optimality_conditions(
    report: SolveReport, instance: Instance, oracle_cost: Optional[int] = None
) -> OptimalityVerdict:
    """Evaluate each optimality condition independently of the others.

    - cost_at_load_bound: total duration + total transition == L * T
    - flat_profile: active tasks + active transitions == L on every region
    - has_free_region: some region is covered by no transition arc
    """
    profile = load_profile(instance)
    L = profile.load
    cost = int(((instance.starts[report.assignment.next_positions] - instance.ends)
                % instance.period).sum())
    M = transition_profile(report.assignment, instance, profile)
    return OptimalityVerdict(
        matches_oracle=None if oracle_cost is None else cost == oracle_cost,
        cost_at_load_bound=instance.total_duration + cost == L * instance.period,
        flat_profile=bool(np.all(profile.levels + M == L)),
        has_free_region=bool(np.any(M == 0)),
    )
