import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mincutrank.cutrank import (
    ALL_CASE_IDS,
    CASE_TABLES,
    CutRankState,
    StaleSwapError,
    StateInvariantError,
    case_histogram,
    naive_cut_rank,
)
from mincutrank.gf2 import BitMatrix, submatrix
from mincutrank.graph import Graph, gen_grid

from conftest import cut_rank_reference, graph_and_cut, random_graph


def _all_pairs(state):
    return [(i, j) for i in sorted(state.x) for j in sorted(state.y)]


def _swapped(x, i, j):
    return (set(x) - {i}) | {j}


def test_tables_have_expected_shape():
    assert len(CASE_TABLES) == 11
    assert len(ALL_CASE_IDS) == 68
    assert len(set(ALL_CASE_IDS)) == 68


def test_worked_example_state(worked_example):
    s = CutRankState(worked_example, [0, 1, 2], debug=True)
    assert s.rank == 2
    assert len(s.xb) == len(s.yb) == 2
    c = submatrix(worked_example.adjacency, s.xb, s.yb)
    assert c @ s.cinv() == BitMatrix.identity(2)


@given(graph_and_cut(max_n=12))
@settings(max_examples=200, deadline=None)
def test_initial_rank_matches_reference(gx):
    g, x = gx
    s = CutRankState(g, x)
    assert s.rank == cut_rank_reference(g, x) == naive_cut_rank(g, x)
    s.check_invariants()


@given(graph_and_cut(max_n=11))
@settings(max_examples=150, deadline=None)
def test_every_swap_delta_matches_reference(gx):
    g, x = gx
    s = CutRankState(g, x)
    r0 = cut_rank_reference(g, x)
    for i, j in _all_pairs(s):
        d = s.evaluate_swap(i, j)
        assert d.delta == cut_rank_reference(g, _swapped(x, i, j)) - r0, (i, j, d.case_id)
        assert d.delta == s.swap_delta(i, j)
        assert -2 <= d.delta <= 2


@given(graph_and_cut(max_n=10), st.data())
@settings(max_examples=150, deadline=None)
def test_applied_swaps_keep_invariants(gx, data):
    g, x = gx
    s = CutRankState(g, x, debug=True)
    for _ in range(data.draw(st.integers(1, 6))):
        i = data.draw(st.sampled_from(sorted(s.x)))
        j = data.draw(st.sampled_from(sorted(s.y)))
        expected = cut_rank_reference(g, _swapped(s.x, i, j))
        s.swap(i, j)
        assert s.rank == expected


@given(graph_and_cut(max_n=10))
@settings(max_examples=100, deadline=None)
def test_highest_witness_policy_agrees(gx):
    g, x = gx
    lo = CutRankState(g, x, witness="lowest")
    hi = CutRankState(g, x, witness="highest")
    assert lo.rank == hi.rank
    for i, j in _all_pairs(lo):
        dl, dh = lo.evaluate_swap(i, j), hi.evaluate_swap(i, j)
        assert dl.delta == dh.delta and dl.case_id == dh.case_id
        t = hi.copy()
        t.debug = True
        t.apply_swap(dh)  # raises StateInvariantError on a bad basis edit


@given(graph_and_cut(max_n=10))
@settings(max_examples=100, deadline=None)
def test_swap_delta_symmetric_in_sides(gx):
    g, x = gx
    s = CutRankState(g, x)
    t = CutRankState(g, s.y)
    assert s.rank == t.rank
    for i, j in _all_pairs(s):
        assert s.swap_delta(i, j) == t.swap_delta(j, i)


def test_input_order_does_not_matter():
    g = random_graph(np.random.default_rng(5), 14, 0.4)
    x = [9, 1, 4, 12, 0, 7]
    a, b = CutRankState(g, x), CutRankState(g, sorted(x))
    assert a.xb == b.xb and a.yb == b.yb
    assert [a.evaluate_swap(i, j) for i, j in _all_pairs(a)] == [b.evaluate_swap(i, j) for i, j in _all_pairs(b)]


def test_evaluate_does_not_mutate():
    g = gen_grid(4, 4)
    s = CutRankState(g, range(8))
    before = (s.version, s.xb, s.yb, s.cinv(), s.dx(), s.dy(), s.f())
    s.evaluate_all_swaps(0)
    s.evaluate_swap(3, 12)
    assert (s.version, s.xb, s.yb, s.cinv(), s.dx(), s.dy(), s.f()) == before


def test_stale_delta_rejected():
    s = CutRankState(gen_grid(3, 3), [0, 1, 2, 3])
    d1 = s.evaluate_swap(0, 4)
    d2 = s.evaluate_swap(1, 5)
    s.apply_swap(d1)
    with pytest.raises(StaleSwapError):
        s.apply_swap(d2)


def test_bad_arguments():
    g = gen_grid(2, 2)
    with pytest.raises(ValueError):
        CutRankState(g, [0, 1, 2, 3])
    with pytest.raises(ValueError):
        CutRankState(g, [7])
    with pytest.raises(ValueError):
        CutRankState(g, [0], witness="middle")
    s = CutRankState(g, [0, 1])
    with pytest.raises(ValueError):
        s.evaluate_swap(2, 3)
    with pytest.raises(ValueError):
        s.evaluate_swap(0, 1)


def test_edgeless_graph_has_rank_zero():
    s = CutRankState(Graph(6), [0, 1, 2], debug=True)
    assert s.rank == 0 and s.xb == [] and s.yb == []
    assert {d.delta for d in s.evaluate_all_swaps(0)} == {0}
    assert {d.case_id for d in s.evaluate_all_swaps(0)} == {"1.5"}


def test_perfect_matching_has_full_rank():
    k = 6
    g = Graph.from_edges(2 * k, [(v, v + k) for v in range(k)])
    s = CutRankState(g, range(k), debug=True)
    assert s.rank == k
    # exchanging the ends of one matching edge leaves every edge crossing
    assert s.swap(0, k).delta == 0
    # pulling a second vertex's partner across removes two crossing edges
    assert s.swap(1, k + 2).delta == -2
    assert s.rank == k - 2 == cut_rank_reference(g, s.x)


def test_grid_swap_sequence_with_debug():
    g = gen_grid(4, 4)
    rng = np.random.default_rng(11)
    s = CutRankState(g, range(8), debug=True)
    for _ in range(50):
        i = int(rng.choice(sorted(s.x)))
        j = int(rng.choice(sorted(s.y)))
        s.swap(i, j)
        assert s.rank == cut_rank_reference(g, s.x)
    assert s.version == 50


def test_check_invariants_detects_corruption():
    s = CutRankState(gen_grid(3, 3), [0, 1, 2, 3])
    s._f_rows[0] ^= 1 << 5
    with pytest.raises(StateInvariantError):
        s.check_invariants()


def test_copy_is_independent():
    s = CutRankState(gen_grid(3, 3), [0, 1, 2, 3])
    t = s.copy()
    t.swap(0, 8)
    assert s.x == frozenset({0, 1, 2, 3}) and s.version == 0
    s.check_invariants()


def test_case_histogram_counts():
    s = CutRankState(gen_grid(3, 3), [0, 1, 2, 3])
    deltas = [s.evaluate_swap(i, j) for i, j in _all_pairs(s)]
    hist = case_histogram(deltas)
    assert sum(hist.values()) == 20
    assert set(hist) <= set(ALL_CASE_IDS)
