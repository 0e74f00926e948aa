import pytest

from prismdom.graph import Graph, banner_graph, gadget_graph, star


@pytest.fixture
def banner():
    return banner_graph()


@pytest.fixture
def gadget():
    return gadget_graph()


@pytest.fixture
def two_gadgets():
    g = gadget_graph()
    return g.disjoint_union(g)


@pytest.fixture
def two_stars():
    s = star(4)
    return s.disjoint_union(s)


def all_graphs(n):
    """Every labelled simple graph on n vertices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [e for k, e in enumerate(pairs) if bits >> k & 1])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
