import pytest
from hypothesis import given, settings

from periodic_assignment import (
    Instance,
    balanced_min_workers,
    build_rollout,
    check_connectivity_equivalence,
    idle_interval_graph,
    patching,
)
from periodic_assignment.rollout import window_is_informative

from conftest import instances


def test_two_task_window(two_task):
    g = build_rollout(two_task, 2)
    assert len(g.nodes) == 4 and len(g.arcs) == 4
    assert sum(e.dangling for e in g.arcs) == 1


def test_single_task_window_is_a_path(single):
    g = build_rollout(single, 3)
    assert len(g.nodes) == 3 and len(g.arcs) == 3
    heads = [e.head for e in g.arcs]
    tails = [e.tail for e in g.arcs]
    assert tails == [0, 1, 2] and heads == [1, 2, None]


def test_four_layer_window_has_two_families(four_layer):
    g = build_rollout(four_layer, 2)
    assert len(g.nodes) == 8
    assert g.components() == 2


@pytest.mark.parametrize("r", [2, 3])
def test_canonical_windows_agree(four_layer, two_task, single, r):
    for inst in (four_layer, two_task, single):
        assert check_connectivity_equivalence(inst, r)


def test_balanced_examples(four_layer, two_task, single):
    assert balanced_min_workers(four_layer) == 3
    assert balanced_min_workers(two_task) == 1
    assert balanced_min_workers(single) == 1


@settings(max_examples=200, deadline=None)
@given(instances(max_n=10))
def test_quotient_is_r_copies_of_periodic_graph(instance):
    graph = idle_interval_graph(instance)
    for r in (1, 2, 5):
        nodes, arcs = build_rollout(instance, r, graph).quotient()
        assert nodes == {k: r for k in range(len(graph.nodes))}
        assert arcs == {(tid, t, h): r for tid, t, h in graph.arcs()}


@settings(max_examples=200, deadline=None)
@given(instances(max_n=10))
def test_rollout_is_acyclic_and_moves_forward(instance):
    g = build_rollout(instance, 4)
    assert not g.has_directed_cycle()
    for e in g.arcs:
        assert e.end > e.start
        if e.head is not None:
            assert g.nodes[e.head].start <= e.end <= g.nodes[e.head].end


@settings(max_examples=200, deadline=None)
@given(instances(max_n=10))
def test_balanced_equals_fair_optimum(instance):
    assert balanced_min_workers(instance) == patching(instance).workers


def test_window_must_be_positive(two_task):
    with pytest.raises(ValueError):
        build_rollout(two_task, 0)
    with pytest.raises(ValueError):
        check_connectivity_equivalence(two_task, 1)


def test_short_window_is_uninformative(single):
    g = build_rollout(single, 1)
    assert not window_is_informative(g, idle_interval_graph(single))


def test_connected_periodic_graph_can_unroll_disconnected():
    """Three tasks chasing each other round the circle form one periodic
    component, but every lift advances the period index by an even amount,
    so the unrolled graph splits into two interleaved components."""
    inst = Instance(12, [(0, 8), (8, 4), (4, 0)])
    assert idle_interval_graph(inst).is_weakly_connected()
    assert patching(inst).workers == 2
    assert check_connectivity_equivalence(inst, 2)  # too short to tell
    for r in range(3, 9):
        g = build_rollout(inst, r)
        assert window_is_informative(g, idle_interval_graph(inst))
        assert not g.interior_connected()
        assert not check_connectivity_equivalence(inst, r)
