"""Brute-force reference solvers for testing the fast paths.

Nothing here calls into the fast solvers: costs, loads and cycles are all
recomputed from the raw task list.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Assignment, Instance, InvariantViolation, LoadProfile, SolveReport

DEFAULT_PAP_CAP = 64
DEFAULT_ENUMERATION_CAP = 8
DEFAULT_FPAP_CAP = 15


class OracleCapExceeded(ValueError):
    pass


def _check_cap(n, cap, what):
    if n > cap:
        raise OracleCapExceeded(f"{what} oracle refuses n={n} (cap {cap})")


def cost_matrix(instance: Instance) -> np.ndarray:
    T = instance.period
    a = [int(x) for x in instance.starts]
    b = [int(x) for x in instance.ends]
    n = len(a)
    return np.array([[(a[j] - b[i]) % T for j in range(n)] for i in range(n)], dtype=np.int64)


def _report(instance: Instance, succ: list[int], method: str) -> SolveReport:
    T = instance.period
    a = [int(x) for x in instance.starts]
    b = [int(x) for x in instance.ends]
    n = len(succ)
    busy = sum((b[i] - a[i]) % T for i in range(n))
    trans = sum((a[succ[i]] - b[i]) % T for i in range(n))
    if (busy + trans) % T:
        raise InvariantViolation("oracle tour length is not a multiple of the period")
    seen = set()
    cycles = 0
    for s in range(n):
        if s in seen:
            continue
        cycles += 1
        k = s
        while k not in seen:
            seen.add(k)
            k = succ[k]
    return SolveReport(
        assignment=Assignment(instance.ids, succ),
        total_transition=trans,
        workers=(busy + trans) // T,
        cycle_count=cycles,
        fair=cycles == 1,
        load=load_oracle(instance).load,
        method=method,
    )


def enumerate_assignments(instance: Instance, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Minimum total transition over all n! successor permutations."""
    _check_cap(instance.n, cap, "enumeration")
    C = cost_matrix(instance).tolist()
    n = instance.n
    return min(sum(C[i][p[i]] for i in range(n)) for p in itertools.permutations(range(n)))


def pap_oracle(
    instance: Instance,
    cap: int = DEFAULT_PAP_CAP,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> SolveReport:
    """Minimum-cost successor permutation via a cubic assignment solver,
    cross-checked by full enumeration for small n."""
    _check_cap(instance.n, cap, "assignment")
    C = cost_matrix(instance)
    rows, cols = linear_sum_assignment(C)
    succ = [0] * instance.n
    for r, c in zip(rows.tolist(), cols.tolist()):
        succ[r] = c
    report = _report(instance, succ, "assignment-oracle")
    if instance.n <= enumeration_cap:
        best = enumerate_assignments(instance, enumeration_cap)
        if best != report.total_transition:
            raise InvariantViolation(
                f"assignment solver {report.total_transition} != enumeration {best}"
            )
    return report


def held_karp(C: np.ndarray) -> tuple[int, list[int]]:
    """Cheapest Hamiltonian cycle over cost matrix ``C``; returns (cost, tour).

    The tour starts at node 0 and lists every node once.
    """
    n = C.shape[0]
    if n == 1:
        return int(C[0, 0]), [0]
    m = n - 1
    full = 1 << m
    inf = np.iinfo(np.int64).max // 4
    dp = np.full((full, m), inf, dtype=np.int64)
    parent = np.full((full, m), -1, dtype=np.int64)
    inner = C[1:, 1:]
    for j in range(m):
        dp[1 << j, j] = C[0, j + 1]
    bits = np.arange(m)
    for mask in range(1, full):
        members = bits[(mask >> bits) & 1 == 1]
        if members.size < 2:
            continue
        prev = mask ^ (1 << members)
        # cand[x, k]: reach k via prev[x], then step k -> members[x]
        cand = dp[prev] + inner[:, members].T
        best = cand.argmin(axis=1)
        dp[mask, members] = cand[np.arange(members.size), best]
        parent[mask, members] = best
    last = dp[full - 1] + C[1:, 0]
    j = int(last.argmin())
    cost = int(last[j])
    tour = []
    mask = full - 1
    while j != -1:
        tour.append(j + 1)
        pj = int(parent[mask, j])
        mask ^= 1 << j
        j = pj
    tour.append(0)
    tour.reverse()
    return cost, tour


def fpap_oracle(instance: Instance, cap: int = DEFAULT_FPAP_CAP) -> SolveReport:
    """Exact fair optimum by Held-Karp dynamic programming over subsets."""
    _check_cap(instance.n, cap, "Held-Karp")
    cost, tour = held_karp(cost_matrix(instance))
    succ = [0] * instance.n
    for x, y in zip(tour, tour[1:] + tour[:1]):
        succ[x] = y
    report = _report(instance, succ, "held-karp")
    if report.total_transition != cost:
        raise InvariantViolation("Held-Karp tour cost disagrees with its value")
    return report


def load_oracle(instance: Instance) -> LoadProfile:
    """Recompute region levels by testing every task against every region.

    Works in doubled coordinates so each open gap has an integer probe
    point (2p + 1) strictly inside it.
    """
    T2 = 2 * instance.period
    tasks = [(2 * int(a), 2 * int(b)) for a, b in zip(instance.starts, instance.ends)]
    points = sorted({t for ab in tasks for t in ab})
    probes = []
    for k, p in enumerate(points):
        probes.append(p)
        probes.append(p + 1)

    def active(task, t):
        a, b = task
        return 0 < (t - a) % T2 < (b - a) % T2

    levels = [sum(active(task, t) for task in tasks) for t in probes]
    load = max(levels)
    witness = next(r for r in range(1, len(levels), 2) if levels[r] == load)
    return LoadProfile(
        instance.period,
        np.array([p // 2 for p in points], dtype=np.int64),
        np.array(levels, dtype=np.int64),
        load,
        witness,
    )
