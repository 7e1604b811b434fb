"""
Distributing a QAOA resource graph over two processors
======================================================

A 3-local cost Hamiltonian on six qubits becomes a 12-vertex graph: one
vertex per qubit plus one per term.  We search a 6/6 split of small cut
rank and build the embedding in which exactly ``rank`` edges, one per
shared entangled pair, cross between the processors.
"""

from mincutrank import EXAMPLE_HAMILTONIAN, gen_qaoa_graph
from mincutrank.anneal import anneal_restarts
from mincutrank.distribute import apply_recovery, plan_distribution, verify_recovery

g, qubits, ancillas = gen_qaoa_graph(EXAMPLE_HAMILTONIAN)
print(f"{g.n} vertices, {g.num_edges} edges; terms:", EXAMPLE_HAMILTONIAN.terms)

res = anneal_restarts(g, 6, restarts=20, base_seed=0)
x = list(res.best.best_partition)
print("best split X =", x, "with cut rank", res.best_rank)

plan = plan_distribution(g, x)
print("ancilla pairs:", plan.ancilla_pairs)
print("processor A:", plan.qpu_assignment["A"])
print("processor B:", plan.qpu_assignment["B"])
print("edges between processors:", plan.cross_edges())

# Three local complementations per pair followed by deleting the ancillas
# give back the original graph.
print("recovery sequence:", plan.recovery_sequence)
print("recovered graph equals original:", verify_recovery(plan))
assert apply_recovery(plan) == g
