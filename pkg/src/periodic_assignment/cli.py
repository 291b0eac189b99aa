"""Command line interface.

Exit codes: 0 success, 1 invalid input (or a failed check), 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import InvalidAssignmentError, InvalidInstanceError, InvariantViolation, load_profile
from .fair import idle_interval_graph, nearest_neighbor, patching, price_of_fairness
from .formats import (
    FormatError,
    emit_instance,
    emit_solution,
    parse_instance,
    parse_solution,
    solution_to_dict,
    verify_solution,
)
from .generators import FAMILIES, GeneratorSpec, generate
from .oracle import DEFAULT_FPAP_CAP, DEFAULT_PAP_CAP, OracleCapExceeded, fpap_oracle, pap_oracle
from .pap import shift_sort_and_match
from .render import render_schedule
from .rollout import balanced_min_workers, build_rollout, check_connectivity_equivalence


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_report(args, report, instance):
    if args.format == "machine":
        _write(emit_solution(solution_to_dict(report, instance)), args.output)
    else:
        _write(render_schedule(report, instance), args.output)


def cmd_solve(args):
    instance = parse_instance(_read(args.instance))
    _emit_report(args, shift_sort_and_match(instance), instance)


def cmd_fair(args):
    instance = parse_instance(_read(args.instance))
    _emit_report(args, patching(instance), instance)


def cmd_nn(args):
    instance = parse_instance(_read(args.instance))
    _emit_report(args, nearest_neighbor(instance, args.start), instance)


def cmd_oracle(args):
    instance = parse_instance(_read(args.instance))
    if args.fpap:
        report = fpap_oracle(instance, cap=args.cap or DEFAULT_FPAP_CAP)
    else:
        report = pap_oracle(instance, cap=args.cap or DEFAULT_PAP_CAP)
    _emit_report(args, report, instance)


def cmd_check(args):
    instance = parse_instance(_read(args.instance))
    solution = parse_solution(_read(args.solution))
    problems = verify_solution(solution, instance)
    if args.format == "machine":
        _write(json.dumps({"ok": not problems, "problems": problems}, indent=2) + "\n", None)
    else:
        _write("ok\n" if not problems else "".join(p + "\n" for p in problems), None)
    return 1 if problems else 0


def cmd_gen(args):
    spec = GeneratorSpec(args.family, args.n, args.period, args.seed, args.layers)
    _write(emit_instance(generate(spec)), args.output)


def cmd_diagnose(args):
    instance = parse_instance(_read(args.instance))
    graph = idle_interval_graph(instance)
    comps = graph.components()
    pof = price_of_fairness(instance)
    info = {
        "period": instance.period,
        "tasks": instance.n,
        "load": load_profile(instance).load,
        "idle_intervals": [[s.start, s.end] for s in graph.nodes],
        "idle_graph_arcs": [
            {"task_id": t, "from": h0, "to": h1} for t, h0, h1 in graph.arcs()
        ],
        "components": comps,
        "fairness_feasible_at_L": len(comps) == 1,
        "fair_workers": pof.fair_workers,
        "price_of_fairness": [pof.ratio.numerator, pof.ratio.denominator],
    }
    if args.format == "machine":
        _write(json.dumps(info, indent=2) + "\n", args.output)
        return
    lines = [
        f"period {info['period']}, {info['tasks']} tasks, load {info['load']}",
        "idle intervals: " + " ".join(f"#{k}{s}" for k, s in enumerate(graph.nodes)),
        "task arcs: " + " ".join(f"{t}:#{a}->#{b}" for t, a, b in graph.arcs()),
        f"weak components: {len(comps)} " + " ".join(str(c) for c in comps),
        f"fair with L workers: {'yes' if len(comps) == 1 else 'no'}",
        f"fair optimum: {pof.fair_workers} workers, price of fairness {pof.delta}/{pof.load}",
    ]
    _write("\n".join(lines) + "\n", args.output)


def cmd_rollout(args):
    instance = parse_instance(_read(args.instance))
    r = args.periods
    if r < 1:
        raise InvalidInstanceError("--periods must be at least 1")
    rolled = build_rollout(instance, r)
    info = {
        "periods": r,
        "nodes": len(rolled.nodes),
        "arcs": len(rolled.arcs),
        "dangling_arcs": sum(e.dangling for e in rolled.arcs),
        "window_components": rolled.components(),
        "interior_nodes": len(rolled.interior()),
        "interior_connected": rolled.interior_connected(),
        "agrees_with_periodic_graph": check_connectivity_equivalence(instance, r) if r >= 2 else None,
        "balanced_min_workers": balanced_min_workers(instance),
    }
    if args.format == "machine":
        _write(json.dumps(info, indent=2) + "\n", args.output)
    else:
        _write("".join(f"{k}: {v}\n" for k, v in info.items()), args.output)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="pap", description="Periodic and fair periodic task assignment."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_instance(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("instance", help="instance file ('-' for stdin)")
        p.set_defaults(func=func)
        return p

    with_instance("solve", cmd_solve, "worker-minimal periodic assignment")
    with_instance("fair", cmd_fair, "worker-minimal fair assignment (patching)")
    p = with_instance("nn", cmd_nn, "nearest neighbor fair heuristic")
    p.add_argument("--start", type=int, default=None, help="first task id")
    p = with_instance("oracle", cmd_oracle, "brute-force reference solvers")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--pap", action="store_true", help="assignment oracle (default)")
    g.add_argument("--fpap", action="store_true", help="Held-Karp fair oracle")
    p.add_argument("--cap", type=int, default=None, help="largest n the oracle accepts")
    p = with_instance("check", cmd_check, "verify a solution file against its instance")
    p.add_argument("solution")
    with_instance("diagnose", cmd_diagnose, "idle intervals, components, price of fairness")
    p = with_instance("rollout", cmd_rollout, "rolled-out idle interval graph window")
    p.add_argument("--periods", type=int, default=3)

    p = sub.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("--family", choices=FAMILIES, default="uniform")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--period", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--layers", type=int, default=2)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, InvalidInstanceError, InvalidAssignmentError, OracleCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
