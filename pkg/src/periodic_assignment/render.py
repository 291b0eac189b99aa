from __future__ import annotations

from .core import Instance, SolveReport, decompose


def render_schedule(report: SolveReport, instance: Instance) -> str:
    """Plain-text roster with one line per worker.

    A cycle operated by ``w`` workers spans ``w`` periods when unrolled;
    its ``m``-th worker covers the ``m``-th period-long slice and moves on
    to the next slice every period.  Times are clock times modulo the
    period, ``~c~`` marks a transition of length ``c``.
    """
    T = instance.period
    dec = decompose(report.assignment, instance)
    succ = report.assignment.successor
    lines = [
        f"period {T}  load {report.load}  workers {report.workers}  "
        f"cycles {report.cycle_count}  fair {'yes' if report.fair else 'no'}"
    ]
    worker = 0
    for c, (cycle, w) in enumerate(zip(dec.cycles, dec.workers), start=1):
        first = min(cycle)
        t0 = instance.task(first).start
        slices = [[] for _ in range(w)]
        t = t0
        tid = first
        for _ in range(len(cycle)):
            task = instance.task(tid)
            dur = (task.end - task.start) % T
            nxt = instance.task(succ[tid])
            gap = (nxt.start - task.end) % T
            slices[(t - t0) // T].append(f"{tid} ({task.start}->{task.end}) ~{gap}~")
            t += dur + gap
            tid = succ[tid]
        for m, items in enumerate(slices, start=1):
            worker += 1
            body = " ".join(items) or "(still busy from the previous slice)"
            lines.append(f"worker {worker} [cycle {c}, slice {m}/{w}]: {body}")
    busy = instance.total_duration
    lines.append(
        f"total: {report.workers} x {T} = {report.workers * T} = "
        f"{busy} task time + {report.total_transition} transition"
    )
    return "\n".join(lines) + "\n"
