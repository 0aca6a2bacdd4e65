import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orgnet import Graph  # noqa: E402

ACCEPTANCE_LINES = []


def random_edges(n, p, rng):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


@pytest.fixture
def star5():
    return Graph.from_edges(5, [(0, i) for i in range(1, 5)])


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def corpus():
    rng = random.Random(1234)
    graphs = []
    for _ in range(60):
        n = rng.randint(1, 30)
        graphs.append((n, random_edges(n, rng.uniform(0.05, 0.7), rng)))
    return graphs


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
