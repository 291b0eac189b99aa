"""Seeded instance families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Instance

FAMILIES = ("uniform", "layered-disconnected", "layered-connected")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one generated instance.

    ``n`` is used by the uniform family only; layered families always have
    ``2 * layers`` tasks.
    """

    family: str = "uniform"
    n: Optional[int] = None
    period: int = 24
    seed: int = 0
    layers: int = 2


def uniform(n: int, period: int, seed: int = 0) -> Instance:
    """``n`` tasks with uniform start in [0, period) and length in [1, period - 1]."""
    if n is None or n < 1:
        raise ValueError(f"uniform family needs n >= 1, got {n}")
    if period < 2:
        raise ValueError("uniform family needs period >= 2")
    rng = np.random.default_rng(seed)
    starts = rng.integers(0, period, size=n)
    lengths = rng.integers(1, period, size=n)
    return Instance.from_arrays(period, starts, (starts + lengths) % period)


def _phases(layers: int, period: int) -> tuple[int, list[int]]:
    if layers < 1:
        raise ValueError("need at least one layer")
    if period < 2 * layers:
        raise ValueError(f"period {period} too short for {layers} layers (need >= {2 * layers})")
    half = period // 2
    return half, [j * half // layers for j in range(layers)]


def layered_disconnected(layers: int, period: int) -> Instance:
    """``layers`` pairs of tasks, each pair tiling the period at its own phase.

    The load is ``layers`` everywhere except the 2 * layers phase points,
    and every pair forms its own component of the idle interval graph, so a
    fair assignment needs one worker more than the load.
    """
    half, phase = _phases(layers, period)
    tasks = []
    for p in phase:
        tasks.append((p, p + half))
        tasks.append((p + half, p))
    return Instance(period, tasks)


def layered_connected(layers: int, period: int) -> Instance:
    """The disconnected family with each wrapping task of layers
    ``0..layers-2`` cut short to end where the next layer's wrapping task
    starts, which chains all components together."""
    half, phase = _phases(layers, period)
    tasks = []
    for j, p in enumerate(phase):
        tasks.append((p, p + half))
        if j + 1 < layers:
            tasks.append((p + half, phase[j + 1] + half))
        else:
            tasks.append((p + half, p))
    return Instance(period, tasks)


def generate(spec: GeneratorSpec) -> Instance:
    if spec.family == "uniform":
        return uniform(spec.n, spec.period, spec.seed)
    if spec.family == "layered-disconnected":
        return layered_disconnected(spec.layers, spec.period)
    if spec.family == "layered-connected":
        return layered_connected(spec.layers, spec.period)
    raise ValueError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
