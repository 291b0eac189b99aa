from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from periodic_assignment import (
    idle_interval_graph,
    idle_intervals,
    is_fair_feasible_at_load,
    load_profile,
    nearest_neighbor,
    patching,
    price_of_fairness,
    shift_sort_and_match,
    transition_profile,
)
from periodic_assignment.fair import PatchingTrace
from periodic_assignment.generators import layered_connected, layered_disconnected
from periodic_assignment.oracle import fpap_oracle, load_oracle

from conftest import instances


def test_nearest_neighbor_two_tasks(two_task):
    r = nearest_neighbor(two_task, 1)
    assert r.assignment.successor == {1: 2, 2: 1}
    assert r.workers == 1 and r.fair


@pytest.mark.parametrize("start", [1, 2, 3, 4])
def test_nearest_neighbor_four_layer(four_layer, start):
    r = nearest_neighbor(four_layer, start)
    assert r.fair and r.workers == 3


def test_nearest_neighbor_single(single):
    r = nearest_neighbor(single)
    assert r.assignment.successor == {1: 1} and r.workers == 1


def test_nearest_neighbor_unknown_start(two_task):
    with pytest.raises(ValueError, match="unknown start task 9"):
        nearest_neighbor(two_task, 9)


@settings(max_examples=300, deadline=None)
@given(instances(max_n=12))
def test_nearest_neighbor_needs_at_most_one_extra_worker(instance):
    L = load_oracle(instance).load
    for tid in instance.ids.tolist():
        r = nearest_neighbor(instance, tid)
        assert r.fair
        assert r.workers in (L, L + 1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_nearest_neighbor_bound_is_tight(k):
    inst = layered_disconnected(k, 12 * k)
    assert load_profile(inst).load == k
    assert nearest_neighbor(inst).workers == k + 1
    assert fpap_oracle(inst).workers == k + 1


def test_idle_intervals_examples(four_layer, two_task, single):
    assert [str(s) for s in idle_intervals(four_layer)] == ["[0,0]", "[3,3]", "[6,6]", "[9,9]"]
    assert [str(s) for s in idle_intervals(two_task)] == ["[4,5]", "[9,0]"]
    assert [str(s) for s in idle_intervals(single)] == ["[7,2]"]


def test_idle_graph_four_layer(four_layer):
    g = idle_interval_graph(four_layer)
    assert g.arcs() == [(1, 0, 2), (2, 2, 0), (3, 1, 3), (4, 3, 1)]
    assert sorted(map(sorted, g.components())) == [[0, 2], [1, 3]]
    assert not is_fair_feasible_at_load(four_layer)


def test_idle_graph_two_task(two_task):
    g = idle_interval_graph(two_task)
    # node 0 is [4,5], node 1 is [9,0]
    assert g.arcs() == [(1, 1, 0), (2, 0, 1)]
    assert is_fair_feasible_at_load(two_task)


def test_idle_graph_single(single):
    g = idle_interval_graph(single)
    assert len(g.nodes) == 1 and g.arcs() == [(1, 0, 0)]
    assert is_fair_feasible_at_load(single)


def _region_owner(instance):
    """Naive idle interval membership: walk the regions of the load oracle."""
    p = load_oracle(instance)
    below = (p.levels < p.load).tolist()
    R = len(below)
    owner = [-1] * R
    label = 0
    start = (p.witness + 1) % R
    for step in range(R):
        r = (start + step) % R
        if below[r]:
            prev = (r - 1) % R
            if not below[prev] and step > 0:
                label += 1
            owner[r] = label
    return p, owner


@settings(max_examples=300, deadline=None)
@given(instances(max_n=10))
def test_idle_graph_matches_naive_membership(instance):
    p, owner = _region_owner(instance)
    g = idle_interval_graph(instance)
    assert g.n_arcs == instance.n
    assert len(g.nodes) == len({o for o in owner if o >= 0})
    # same partition of task endpoints, up to node renaming
    fast = [(int(t), int(h)) for _, t, h in g.arcs()]
    slow = [
        (owner[p.point_region(int(a))], owner[p.point_region(int(b))])
        for a, b in zip(instance.starts, instance.ends)
    ]
    rename = {}
    for (ft, fh), (st_, sh) in zip(fast, slow):
        assert rename.setdefault(st_, ft) == ft
        assert rename.setdefault(sh, fh) == fh


@settings(max_examples=300, deadline=None)
@given(instances(max_n=10))
def test_optimal_arcs_stay_inside_idle_intervals(instance):
    r = shift_sort_and_match(instance)
    p = load_profile(instance)
    M = transition_profile(r.assignment, instance, p)
    assert np.all(p.levels[M > 0] < p.load)


def test_patching_examples(four_layer, two_task):
    r = patching(two_task)
    assert r.fair and r.workers == 1 and r.total_transition == 4
    r = patching(four_layer)
    assert r.fair and r.workers == 3 and r.method == "patching+nearest-neighbor"


@settings(max_examples=300, deadline=None)
@given(instances(max_n=9))
def test_patching_matches_held_karp(instance):
    r, best = patching(instance), fpap_oracle(instance)
    assert r.fair
    assert (r.workers, r.total_transition) == (best.workers, best.total_transition)
    L = load_oracle(instance).load
    assert best.workers - L in (0, 1)
    assert (best.workers == L) == is_fair_feasible_at_load(instance)
    T = instance.period
    assert best.total_transition == best.workers * T - instance.total_duration


@settings(max_examples=300, deadline=None)
@given(instances(max_n=10))
def test_exchanges_conserve_cost_and_merge_one_cycle(instance):
    trace = PatchingTrace()
    r = patching(instance, trace=trace)
    assert len(trace.exchanges) <= instance.n - 1
    assert trace.dominance_ok
    assert trace.first_arc_opens_interval
    for ex in trace.exchanges:
        assert ex["cost_after"] == ex["cost_before"]
        assert ex["cycles_after"] == ex["cycles_before"] - 1
    assert trace.fell_back == (not is_fair_feasible_at_load(instance))
    assert patching(instance) == r


@settings(max_examples=200, deadline=None)
@given(instances(max_n=10))
def test_single_cycle_is_returned_unchanged(instance):
    base = shift_sort_and_match(instance)
    if base.fair:
        assert patching(instance).assignment == base.assignment


def test_price_of_fairness_examples(four_layer, two_task, single):
    assert price_of_fairness(four_layer) == (2, 3, 1, Fraction(1, 2))
    assert price_of_fairness(two_task) == (1, 1, 0, Fraction(0))
    assert price_of_fairness(single) == (1, 1, 0, Fraction(0))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_layered_connected_is_fair_at_load(k):
    inst = layered_connected(k, 12 * k)
    assert load_profile(inst).load == k
    assert patching(inst).workers == k
