import random

import pytest
from hypothesis import strategies as st

from periodic_assignment import Instance
from periodic_assignment.generators import uniform

FOUR_LAYER = Instance(12, [(0, 6), (6, 0), (3, 9), (9, 3)])
TWO_TASK = Instance(12, [(0, 4), (5, 9)])
SINGLE = Instance(10, [(2, 7)])


@pytest.fixture
def four_layer():
    return FOUR_LAYER


@pytest.fixture
def two_task():
    return TWO_TASK


@pytest.fixture
def single():
    return SINGLE


def seeded_uniform(seed, max_n, max_period=24):
    """Small uniform instance whose size and period are drawn from ``seed``."""
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    period = rng.randint(2, max_period)
    return uniform(n, period, seed)


@st.composite
def instances(draw, max_n=8, max_period=20):
    period = draw(st.integers(2, max_period))
    n = draw(st.integers(1, max_n))
    pairs = []
    for _ in range(n):
        a = draw(st.integers(0, period - 1))
        length = draw(st.integers(1, period - 1))
        pairs.append((a, (a + length) % period))
    return Instance(period, pairs)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
