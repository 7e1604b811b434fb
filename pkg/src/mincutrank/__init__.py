"""Minimum cut-rank bipartitions of graph states by simulated annealing."""

from .gf2 import BitMatrix, NotInvertible, invert, mul, rank, rank_one_decompose, submatrix
from .graph import (
    EXAMPLE_HAMILTONIAN,
    Graph,
    Hamiltonian,
    cut_matrix,
    delete_vertices,
    gen_erdos_renyi,
    gen_grid,
    gen_qaoa_graph,
    local_complement,
    random_hamiltonian,
    read_edge_list,
    write_edge_list,
)
from .cutrank import CutRankState, SwapDelta, naive_cut_rank
from .anneal import AnnealResult, Schedule, anneal, anneal_restarts
from .distribute import DistributionPlan, plan_distribution, verify_recovery

__version__ = "0.1.0"
