"""JSON instance and solution files.

Instance::

    {"period": 12, "tasks": [{"id": 1, "start": 0, "end": 6}, ...]}

Solution files carry the digest of the instance they were computed for,
the successor list with per-arc cost, the cycles and the summary numbers.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .core import (
    Assignment,
    Instance,
    InvalidAssignmentError,
    InvalidInstanceError,
    SolveReport,
    Task,
    decompose,
    load_profile,
    transition_costs,
)
from .fair import is_fair_feasible_at_load


class FormatError(ValueError):
    pass


def _int_field(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def instance_from_dict(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise FormatError("top level: expected an object with 'period' and 'tasks'")
    period = _int_field(data, "period", "top level")
    if period < 1:
        raise FormatError(f"period: must be positive, got {period}")
    tasks_raw = data.get("tasks")
    if not isinstance(tasks_raw, list) or not tasks_raw:
        raise FormatError("tasks: expected a non-empty list")
    tasks = []
    seen = set()
    for k, t in enumerate(tasks_raw):
        where = f"tasks[{k}]"
        if not isinstance(t, dict):
            raise FormatError(f"{where}: expected an object")
        tid = _int_field(t, "id", where)
        a = _int_field(t, "start", where)
        b = _int_field(t, "end", where)
        if tid < 0:
            raise FormatError(f"{where}.id: negative id {tid}")
        if tid in seen:
            raise FormatError(f"{where}.id: duplicate id {tid}")
        seen.add(tid)
        for name, v in (("start", a), ("end", b)):
            if not 0 <= v < period:
                raise FormatError(f"{where}.{name}: task {tid} has {name} {v} outside [0, {period})")
        if a == b:
            raise FormatError(f"{where}: task {tid} has start == end ({a})")
        tasks.append(Task(tid, a, b))
    try:
        return Instance(period, tasks)
    except InvalidInstanceError as exc:
        raise FormatError(str(exc)) from None


def instance_to_dict(instance: Instance) -> dict:
    return {
        "period": instance.period,
        "tasks": [{"id": t.id, "start": t.start, "end": t.end} for t in instance.tasks],
    }


def parse_instance(text: str) -> Instance:
    return instance_from_dict(_loads(text))


def emit_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def instance_digest(instance: Instance) -> str:
    canon = json.dumps(instance_to_dict(instance), separators=(",", ":"), sort_keys=True)
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _canonical_cycles(cycles) -> list[list[int]]:
    out = []
    for c in cycles:
        c = list(c)
        k = c.index(min(c))
        out.append(c[k:] + c[:k])
    return sorted(out, key=lambda c: c[0])


def solution_to_dict(report: SolveReport, instance: Instance) -> dict:
    costs = transition_costs(report.assignment, instance).tolist()
    succ = report.assignment.successor
    return {
        "instance_digest": instance_digest(instance),
        "method": report.method,
        "load": report.load,
        "workers": report.workers,
        "total_transition": report.total_transition,
        "fair": report.fair,
        "fairness_feasible_at_L": is_fair_feasible_at_load(instance),
        "successors": [
            {"from_id": i, "to_id": succ[i], "cost": c}
            for i, c in zip(instance.ids.tolist(), costs)
        ],
        "cycles": _canonical_cycles(decompose(report.assignment, instance).cycles),
    }


def emit_solution(solution: dict) -> str:
    return json.dumps(solution, indent=2) + "\n"


def parse_solution(text: str) -> dict:
    data = _loads(text)
    if not isinstance(data, dict):
        raise FormatError("top level: expected an object")
    if not isinstance(data.get("instance_digest"), str):
        raise FormatError("instance_digest: expected a string")
    for key in ("load", "workers", "total_transition"):
        _int_field(data, key, "top level")
    for key in ("fair", "fairness_feasible_at_L"):
        if not isinstance(data.get(key), bool):
            raise FormatError(f"{key}: expected true or false")
    succ = data.get("successors")
    if not isinstance(succ, list):
        raise FormatError("successors: expected a list")
    for k, arc in enumerate(succ):
        if not isinstance(arc, dict):
            raise FormatError(f"successors[{k}]: expected an object")
        for key in ("from_id", "to_id", "cost"):
            _int_field(arc, key, f"successors[{k}]")
    cycles = data.get("cycles")
    if not isinstance(cycles, list) or not all(
        isinstance(c, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in c)
        for c in cycles
    ):
        raise FormatError("cycles: expected a list of id lists")
    return data


def verify_solution(solution: dict, instance: Instance) -> list[str]:
    """Re-derive every number of ``solution`` from ``instance``.

    Raises on structural problems (wrong instance, non-permutation);
    returns one message per numeric field that disagrees.
    """
    if solution["instance_digest"] != instance_digest(instance):
        raise FormatError("instance_digest: solution belongs to a different instance")
    mapping = {}
    for k, arc in enumerate(solution["successors"]):
        if arc["from_id"] in mapping:
            raise InvalidAssignmentError(f"successors[{k}]: task {arc['from_id']} has two successors")
        mapping[arc["from_id"]] = arc["to_id"]
    assignment = Assignment.from_mapping(instance, mapping)
    T = instance.period
    problems = []
    for k, arc in enumerate(solution["successors"]):
        a = instance.task(arc["to_id"]).start
        b = instance.task(arc["from_id"]).end
        if arc["cost"] != (a - b) % T:
            problems.append(f"successors[{k}].cost: file says {arc['cost']}, derived {(a - b) % T}")
    dec = decompose(assignment, instance)
    derived = {
        "load": load_profile(instance).load,
        "workers": dec.total_workers,
        "total_transition": sum(dec.transition),
        "fair": len(dec) == 1,
        "fairness_feasible_at_L": is_fair_feasible_at_load(instance),
    }
    for key, value in derived.items():
        if solution[key] != value:
            problems.append(f"{key}: file says {solution[key]}, derived {value}")
    if _canonical_cycles(solution["cycles"]) != _canonical_cycles(dec.cycles):
        problems.append("cycles: listed cycles differ from the successor map's orbits")
    return problems
