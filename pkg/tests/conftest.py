"""Shared fixtures and independent reference implementations for the tests."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from mincutrank.graph import Graph

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def gf2_rank_reference(a) -> int:
    """Rank over GF(2) by plain row reduction on a 0/1 integer array.

    Deliberately shares no code with the bit-packed implementation.
    """
    m = np.array(a, dtype=np.int64) % 2
    if m.size == 0:
        return 0
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        pivot = None
        for k in range(r, rows):
            if m[k, c]:
                pivot = k
                break
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for k in range(rows):
            if k != r and m[k, c]:
                m[k] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def cut_rank_reference(g: Graph, x) -> int:
    xs = sorted(set(x))
    ys = [v for v in range(g.n) if v not in set(xs)]
    adj = g.adjacency.to_array()
    return gf2_rank_reference(adj[np.ix_(xs, ys)]) if xs and ys else 0


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


@st.composite
def graphs(draw, min_n: int = 2, max_n: int = 12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def graph_and_cut(draw, min_n: int = 2, max_n: int = 12):
    """A graph with a proper nonempty subset ``X``."""
    g = draw(graphs(min_n=max(2, min_n), max_n=max_n))
    members = draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    x = [v for v in range(g.n) if members[v]]
    if not x:
        x = [0]
    if len(x) == g.n:
        x = x[:-1]
    return g, x


@st.composite
def bit_matrices(draw, max_rows: int = 10, max_cols: int = 10):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return np.array(rows, dtype=np.uint8).reshape(r, c)


@pytest.fixture
def worked_example() -> Graph:
    """Six-vertex example: X = {0, 1, 2} against Y = {3, 4, 5}, cut rank 2."""
    return Graph.from_edges(6, [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 5)])
