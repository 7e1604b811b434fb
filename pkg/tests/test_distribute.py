import json

from hypothesis import given, settings

from mincutrank.distribute import apply_recovery, plan_distribution, verify_recovery, write_plan
from mincutrank.graph import EXAMPLE_HAMILTONIAN, Graph, delete_vertices, gen_qaoa_graph, local_complement, read_edge_list

from conftest import cut_rank_reference, graph_and_cut

# embedded graph of the worked example with ancilla pairs (6, 7) and (8, 9)
WORKED_EMBEDDING = [(0, 6), (1, 6), (6, 7), (7, 3), (7, 4), (2, 8), (1, 8), (8, 9), (9, 5)]


def test_worked_example_plan(worked_example):
    plan = plan_distribution(worked_example, [0, 1, 2])
    assert plan.rank == 2
    assert plan.ancilla_pairs == ((6, 7), (8, 9))
    assert plan.recovery_sequence == (6, 7, 6, 8, 9, 8)
    assert plan.embedded == Graph.from_edges(10, WORKED_EMBEDDING)
    assert plan.cross_edges() == [(6, 7), (8, 9)]
    assert verify_recovery(plan)


def test_worked_example_identity_step_by_step(worked_example):
    h = Graph.from_edges(10, WORKED_EMBEDDING)
    for v in (6, 7, 6, 8, 9, 8):
        h = local_complement(h, v)
    h, mapping = delete_vertices(h, [6, 7, 8, 9])
    assert mapping == {v: v for v in range(6)}
    assert h == worked_example
    assert apply_recovery(plan_distribution(worked_example, [0, 1, 2])) == worked_example


def test_zero_cut_has_no_pairs():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    plan = plan_distribution(g, [0, 1])
    assert plan.rank == 0 and plan.ancilla_pairs == ()
    assert plan.embedded == g
    assert verify_recovery(plan)


def test_qaoa_partition_needs_three_pairs():
    g, _, _ = gen_qaoa_graph(EXAMPLE_HAMILTONIAN)
    plan = plan_distribution(g, [0, 1, 6, 7, 8, 11])
    assert plan.rank == 3 and len(plan.ancillas) == 6
    assert len(plan.cross_edges()) == 3
    assert verify_recovery(plan)


@given(graph_and_cut(max_n=12))
@settings(max_examples=200, deadline=None)
def test_plan_invariants(gx):
    g, x = gx
    plan = plan_distribution(g, x)
    r = cut_rank_reference(g, x)
    assert plan.rank == r
    assert plan.embedded.n == g.n + 2 * r
    assert sorted(plan.cross_edges()) == sorted(plan.ancilla_pairs)
    assert cut_rank_reference(plan.embedded, plan.qpu_assignment["A"]) == r
    xset = set(x)
    for a, b in plan.ancilla_pairs:
        assert all(v in xset for v in plan.embedded.neighbors(a) if v != b)
        assert all(v not in xset for v in plan.embedded.neighbors(b) if v != a and v < g.n)
    assert verify_recovery(plan)


def test_write_plan(tmp_path, worked_example):
    plan = plan_distribution(worked_example, [0, 1, 2])
    el, js = write_plan(plan, tmp_path / "plan")
    assert read_edge_list(el) == plan.embedded
    data = json.loads(open(js).read())
    assert data == {
        "rank": 2,
        "pairs": [[6, 7], [8, 9]],
        "qpu_assignment": {"A": [0, 1, 2, 6, 8], "B": [3, 4, 5, 7, 9]},
        "recovery_sequence": [6, 7, 6, 8, 9, 8],
    }
