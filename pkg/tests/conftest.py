import itertools
from collections import Counter

import pytest

from sparrange.graph import Arrangement, Graph
from sparrange.sptree import expand, parse_tree


def naive_minla(g: Graph):
    """Plain-Python enumeration, kept apart from the numpy oracles it checks."""
    best = None
    for perm in itertools.permutations(g.nodes):
        pos = {v: i for i, v in enumerate(perm)}
        cost = sum(abs(pos[u] - pos[v]) for u, v in g.edges)
        if best is None or cost < best[0]:
            best = (cost, perm)
    return best[0], Arrangement.from_order(list(best[1]))


def naive_cost(edges, order):
    pos = {v: i for i, v in enumerate(order)}
    return sum(abs(pos[u] - pos[v]) for u, v in edges)


def edge_multiset(g: Graph):
    return Counter(frozenset(e) for e in g.edges)


def tree_graph(text: str):
    return expand(parse_tree(text))


@pytest.fixture
def diamond() -> Graph:
    return Graph.from_edges([("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")], "s", "t")


@pytest.fixture
def triangle() -> Graph:
    return Graph.from_edges([("s", "a"), ("a", "t"), ("s", "t")], "s", "t")


@pytest.fixture
def pendant_double() -> Graph:
    return Graph.from_edges([("u", "w"), ("w", "v"), ("w", "v")], "u", "v")


K4_EDGES = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]


# one (criterion, passed, detail) entry per acceptance criterion, printed at the end
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}")
