import random

import pytest

from excellent_ktrees.family import apply_o1, base_tree
from excellent_ktrees.graph import (
    build_graph,
    complete_graph,
    cycle_graph,
    diamond,
    path_graph,
    permute,
    star_graph,
)

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def star3():
    return star_graph(3)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def o1_six():
    """The 6-vertex 2-tree from one O1 step on edge 01 of the red base triangle."""
    return apply_o1(base_tree(), (0, 1), (3, 4, 5)).graph


def shuffled(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return permute(g, perm)


def gnp(n, p, seed):
    rng = random.Random(seed)
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
