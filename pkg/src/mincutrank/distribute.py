"""Embedding a bipartitioned graph so that only ``r`` edges cross the cut.

For a cut of rank ``r`` the cut matrix is written as a sum of ``r`` rank-one
blocks ``u_t v_t^T``.  Each block becomes a pair of ancillas ``(a_t, b_t)``:
``a_t`` joins the vertices in ``u_t``, ``b_t`` those in ``v_t``, and the two
are joined by the only edge of the pair that crosses the cut.  Local
complementation at ``a_t``, ``b_t``, ``a_t`` followed by deleting the
ancillas restores the original cross edges.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable

from .gf2 import iter_bits, rank_one_decompose
from .graph import Graph, cut_matrix, delete_vertices, local_complement, write_edge_list

__all__ = ["DistributionPlan", "plan_distribution", "verify_recovery", "apply_recovery", "write_plan"]


@dataclass(frozen=True)
class DistributionPlan:
    original: Graph
    x: tuple[int, ...]
    y: tuple[int, ...]
    rank: int
    embedded: Graph
    ancilla_pairs: tuple[tuple[int, int], ...]
    recovery_sequence: tuple[int, ...]

    @property
    def ancillas(self) -> list[int]:
        return [v for pair in self.ancilla_pairs for v in pair]

    @property
    def qpu_assignment(self) -> dict[str, list[int]]:
        """Vertices held by each processor: ``X`` plus every ``a_t``, ``Y`` plus every ``b_t``."""
        return {
            "A": sorted(list(self.x) + [a for a, _ in self.ancilla_pairs]),
            "B": sorted(list(self.y) + [b for _, b in self.ancilla_pairs]),
        }

    def cross_edges(self) -> list[tuple[int, int]]:
        """Edges of the embedded graph between the two processors."""
        side_a = set(self.qpu_assignment["A"])
        return [(u, v) for u, v in self.embedded.edges() if (u in side_a) != (v in side_a)]

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "pairs": [list(p) for p in self.ancilla_pairs],
            "qpu_assignment": self.qpu_assignment,
            "recovery_sequence": list(self.recovery_sequence),
        }


def plan_distribution(g: Graph, x: Iterable[int]) -> DistributionPlan:
    """Build the ancilla embedding for the bipartition ``(x, V - x)``.

    Ancillas are numbered after the original vertices, ``a_t = n + 2t`` and
    ``b_t = n + 2t + 1``.  The decomposition is deterministic (see
    :func:`~mincutrank.gf2.rank_one_decompose`).
    """
    xs = sorted(set(x))
    n = g.n
    for v in xs:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for n={n}")
    xset = set(xs)
    ys = [v for v in range(n) if v not in xset]
    if not ys:
        raise ValueError("complement of X must be nonempty")
    terms = rank_one_decompose(cut_matrix(g, xs, ys))
    r = len(terms)

    edges = [(u, v) for u, v in g.edges() if (u in xset) == (v in xset)]
    pairs = []
    sequence = []
    for t, (u, w) in enumerate(terms):
        a, b = n + 2 * t, n + 2 * t + 1
        edges.extend((xs[k], a) for k in iter_bits(u))
        edges.extend((ys[k], b) for k in iter_bits(w))
        edges.append((a, b))
        pairs.append((a, b))
        sequence.extend((a, b, a))
    embedded = Graph.from_edges(n + 2 * r, edges)
    return DistributionPlan(
        original=g,
        x=tuple(xs),
        y=tuple(ys),
        rank=r,
        embedded=embedded,
        ancilla_pairs=tuple(pairs),
        recovery_sequence=tuple(sequence),
    )


def apply_recovery(plan: DistributionPlan) -> Graph:
    """Local complementations of the recovery sequence, then ancilla deletion."""
    h = plan.embedded
    for v in plan.recovery_sequence:
        h = local_complement(h, v)
    h, _ = delete_vertices(h, plan.ancillas)
    return h


def verify_recovery(plan: DistributionPlan) -> bool:
    """True iff the recovery sequence turns the embedding back into the original graph."""
    # ancillas are the highest ids, so deletion keeps original ids unchanged
    return apply_recovery(plan) == plan.original


def write_plan(plan: DistributionPlan, prefix: str | os.PathLike) -> tuple[str, str]:
    """Write ``<prefix>.el`` (embedded graph) and ``<prefix>.json`` (plan sidecar)."""
    prefix = os.fspath(prefix)
    el_path, json_path = prefix + ".el", prefix + ".json"
    write_edge_list(plan.embedded, el_path)
    with open(json_path, "w") as fh:
        json.dump(plan.to_dict(), fh, indent=2)
        fh.write("\n")
    return el_path, json_path
