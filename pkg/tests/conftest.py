import random

import networkx as nx
import pytest

from cluster_forge.graph import LabeledGraph

ACCEPTANCE_LINES: list[str] = []


def to_nx(G: LabeledGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n_vertices))
    g.add_edges_from(G.edge_list())
    return g


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def acceptance_log():
    def record(criterion: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f" -- {detail}" if detail else ""))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
