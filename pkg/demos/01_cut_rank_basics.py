"""
Cut rank of a bipartition, and how it changes under a swap
==========================================================

Run with ``python demos/01_cut_rank_basics.py``.
"""

import numpy as np

from mincutrank import CutRankState, Graph, cut_matrix, local_complement, naive_cut_rank

# A six-vertex graph split into X = {0, 1, 2} and Y = {3, 4, 5}.
g = Graph.from_edges(6, [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 5)])
x = [0, 1, 2]

# The cut rank is the GF(2) rank of the adjacency block A[X, Y].
block = cut_matrix(g, x, [3, 4, 5])
print("A[X, Y] =")
print(block.to_array())
print("cut rank:", naive_cut_rank(g, x))

# Rows 0 and 1 of the block differ only in column 5, and row 2 is column 5
# alone, so row 1 = row 0 + row 2 and the rank is 2, not 3.

# Local complementation at any vertex keeps every cut rank.
for v in range(g.n):
    assert naive_cut_rank(local_complement(g, v), x) == 2
print("rank after local complementation at each vertex: 2")

# The incremental state answers "what if i and j swap sides?" without
# recomputing the rank from scratch.
state = CutRankState(g, x)
print("basis rows", state.xb, "basis columns", state.yb)
table = np.array([[state.swap_delta(i, j) for j in sorted(state.y)] for i in sorted(state.x)])
print("rank change for swapping row vertex i with column vertex j:")
print(table)

# Check one entry against a recomputation, then apply the swap.
d = state.evaluate_swap(0, 5)
print(f"swap 0 <-> 5: delta {d.delta:+d} (table row {d.case_id})")
state.apply_swap(d)
print("new X:", sorted(state.x), "rank:", state.rank, "recomputed:", naive_cut_rank(g, state.x))
