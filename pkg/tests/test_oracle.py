import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from periodic_assignment import Instance
from periodic_assignment.oracle import (
    OracleCapExceeded,
    cost_matrix,
    enumerate_assignments,
    fpap_oracle,
    held_karp,
    load_oracle,
    pap_oracle,
)

from conftest import instances


def test_pap_oracle_examples(four_layer, two_task, single):
    r = pap_oracle(four_layer)
    assert (r.total_transition, r.workers) == (0, 2)
    r = pap_oracle(two_task)
    assert (r.total_transition, r.workers) == (4, 1)
    r = pap_oracle(single)
    assert (r.total_transition, r.workers) == (10 - 5, 1)


def test_fpap_oracle_examples(four_layer, two_task, single):
    r = fpap_oracle(four_layer)
    assert (r.total_transition, r.workers, r.fair) == (12, 3, True)
    r = fpap_oracle(two_task)
    assert (r.total_transition, r.workers) == (4, 1)
    r = fpap_oracle(single)
    assert r.assignment.successor == {1: 1} and r.workers == 1


def test_load_oracle_examples(four_layer, single):
    assert load_oracle(four_layer).load == 2
    assert load_oracle(single).load == 1


def test_caps_refuse(two_task):
    big = Instance(30, [(k, k + 1) for k in range(20)])
    with pytest.raises(OracleCapExceeded, match="cap 15"):
        fpap_oracle(big)
    with pytest.raises(OracleCapExceeded):
        pap_oracle(big, cap=10)
    with pytest.raises(OracleCapExceeded):
        enumerate_assignments(big)


def _brute_tsp(C):
    n = len(C)
    best = None
    for rest in itertools.permutations(range(1, n)):
        tour = (0,) + rest
        c = sum(C[tour[k]][tour[(k + 1) % n]] for k in range(n))
        best = c if best is None else min(best, c)
    return best


@settings(max_examples=200, deadline=None)
@given(instances(max_n=7))
def test_held_karp_matches_tour_enumeration(instance):
    C = cost_matrix(instance)
    cost, tour = held_karp(C)
    assert sorted(tour) == list(range(instance.n))
    assert cost == _brute_tsp(C.tolist())


@settings(max_examples=200, deadline=None)
@given(instances(max_n=7))
def test_assignment_solver_matches_enumeration(instance):
    assert pap_oracle(instance, enumeration_cap=0).total_transition == enumerate_assignments(instance)


def test_cost_matrix_is_modular(two_task):
    assert cost_matrix(two_task).tolist() == [[8, 1], [3, 8]]
    assert np.all(np.diag(cost_matrix(two_task)) == 12 - two_task.durations)
