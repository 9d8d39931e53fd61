import pytest

from twistspace import corpus
from twistspace.graph import GraphInvolution, HalfEdgeGraph


@pytest.fixture(scope="session")
def graphs():
    return corpus.load_all()


def make(endpoints, edge_ids=None, rotation=None, tau=None):
    """Small helper: graph from endpoint pairs, optional tau on half-edge ids."""
    g = HalfEdgeGraph.from_edges(endpoints, edge_ids, rotation=rotation)
    t = GraphInvolution.from_mapping(g, tau or {})
    return g, t


# Acceptance criteria record one line each; they are echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
