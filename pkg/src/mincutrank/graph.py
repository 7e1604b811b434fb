"""Simple undirected graphs backed by a GF(2) adjacency matrix.

Also holds the graph families used in the experiments (grids, sparse
Erdos-Renyi graphs, measurement-based QAOA resource graphs) and the
edge-list / Hamiltonian file formats.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .gf2 import BitMatrix, iter_bits, submatrix

__all__ = [
    "Graph",
    "Hamiltonian",
    "EXAMPLE_HAMILTONIAN",
    "GraphFormatError",
    "local_complement",
    "delete_vertices",
    "cut_matrix",
    "gen_grid",
    "gen_erdos_renyi",
    "gen_qaoa_graph",
    "random_hamiltonian",
    "read_edge_list",
    "write_edge_list",
    "format_edge_list",
    "parse_edge_list",
    "read_hamiltonian",
    "write_hamiltonian",
]


class GraphFormatError(ValueError):
    """Malformed edge-list or Hamiltonian input."""


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    The adjacency matrix is symmetric with a zero diagonal.  Graphs are
    immutable; every operation returns a new graph.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, adjacency: BitMatrix | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if adjacency is None:
            adjacency = BitMatrix(n, n)
        if adjacency.shape != (n, n):
            raise ValueError(f"adjacency has shape {adjacency.shape}, expected {(n, n)}")
        rows = adjacency.data
        for v, row in enumerate(rows):
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        self.n = n
        self._adj = adjacency.copy()

    @classmethod
    def _trusted(cls, n: int, rows: list[int]) -> "Graph":
        g = object.__new__(cls)
        g.n = n
        g._adj = BitMatrix.__new__(BitMatrix)
        g._adj.nrows = g._adj.ncols = n
        g._adj.data = rows
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, rows)

    @classmethod
    def from_networkx(cls, nxg) -> "Graph":
        nodes = sorted(nxg.nodes())
        index = {v: k for k, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in nxg.edges()))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @property
    def adjacency(self) -> BitMatrix:
        """A copy of the adjacency matrix."""
        return self._adj.copy()

    @property
    def rows(self) -> list[int]:
        """Adjacency rows as neighbourhood bit masks (read-only by convention)."""
        return self._adj.data

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj.data[v]))

    def degree(self, v: int) -> int:
        return self._adj.data[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj.data[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        out = []
        for u, row in enumerate(self._adj.data):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self._adj.data) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj.data == other._adj.data

    def __hash__(self):
        return hash((self.n, tuple(self._adj.data)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def local_complement(g: Graph, v: int) -> Graph:
    """Return ``g * v``: every edge between two neighbours of ``v`` is toggled."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    rows = list(g.rows)
    nbh = rows[v]
    for u in iter_bits(nbh):
        rows[u] ^= nbh & ~(1 << u)
    return Graph._trusted(g.n, rows)


def delete_vertices(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V - vs`` plus the map from old to new ids."""
    drop = set(vs)
    for v in drop:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in drop]
    id_map = {old: new for new, old in enumerate(keep)}
    sub = submatrix(g._adj, keep, keep)
    return Graph._trusted(len(keep), sub.data), id_map


def cut_matrix(g: Graph, x: Sequence[int], y: Sequence[int]) -> BitMatrix:
    """The ``|x| x |y|`` adjacency block ``A[x, y]`` in the given orders."""
    if set(x) & set(y):
        raise ValueError("row and column vertex sets overlap")
    return submatrix(g._adj, x, y)


# generators ---------------------------------------------------------------


def gen_grid(rows: int, cols: int) -> Graph:
    """4-neighbour grid; vertex ``(r, c)`` has id ``r * cols + c``."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def gen_erdos_renyi(n: int, p: float, seed) -> Graph:
    """G(n, p); pair ``(u, v)``, ``u < v``, in lexicographic order consumes one uniform draw."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} not in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


@dataclass(frozen=True)
class Hamiltonian:
    """Support structure of a sum of Pauli-Z product terms.

    Only the qubit supports matter for the resource graph; coefficients
    read from JSON are kept in ``coeffs`` for provenance and otherwise
    ignored.
    """

    num_qubits: int
    terms: tuple[tuple[int, ...], ...]
    coeffs: tuple[float | None, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        terms = tuple(tuple(int(q) for q in t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        for t in terms:
            if not t:
                raise ValueError("empty Hamiltonian term")
            if len(set(t)) != len(t):
                raise ValueError(f"repeated qubit in term {t}")
            for q in t:
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"qubit {q} out of range in term {t}")

    @classmethod
    def from_dict(cls, d: dict) -> "Hamiltonian":
        try:
            nq = int(d["num_qubits"])
            raw = d["terms"]
            terms = tuple(tuple(t["qubits"]) for t in raw)
            coeffs = tuple(t.get("coeff") for t in raw)
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed Hamiltonian: {exc}") from exc
        return cls(nq, terms, coeffs)

    def to_dict(self) -> dict:
        out = []
        coeffs = self.coeffs or (None,) * len(self.terms)
        for t, c in zip(self.terms, coeffs):
            item = {"qubits": list(t)}
            if c is not None:
                item["coeff"] = c
            out.append(item)
        return {"num_qubits": self.num_qubits, "terms": out}


#: The 3-local example Hamiltonian on 6 qubits used throughout the demos.
EXAMPLE_HAMILTONIAN = Hamiltonian(
    6, ((0, 1, 2), (0, 3, 5), (1, 2, 4), (3, 4, 5), (2, 3, 4), (2, 3, 5))
)


def gen_qaoa_graph(h: Hamiltonian) -> tuple[Graph, list[int], list[int]]:
    """Resource graph for one QAOA cost layer.

    Circuit qubits keep ids ``0..num_qubits-1`` and are pairwise
    non-adjacent.  Term ``t`` gets ancilla ``num_qubits + t`` connected to
    every qubit in its support.
    """
    nq = h.num_qubits
    edges = []
    for t, support in enumerate(h.terms):
        a = nq + t
        edges.extend((q, a) for q in support)
    g = Graph.from_edges(nq + len(h.terms), edges)
    return g, list(range(nq)), list(range(nq, nq + len(h.terms)))


def random_hamiltonian(num_qubits: int, num_terms: int, locality: int, seed) -> Hamiltonian:
    """Random Hamiltonian with distinct ``locality``-subset supports.

    Supports are drawn uniformly (sorted random ``locality``-subsets) and
    duplicates are rejected, so every term is different.
    """
    from math import comb

    if locality < 1 or locality > num_qubits:
        raise ValueError("locality must be between 1 and num_qubits")
    if num_terms > comb(num_qubits, locality):
        raise ValueError("more terms requested than distinct supports exist")
    rng = np.random.default_rng(seed)
    seen: set[tuple[int, ...]] = set()
    terms = []
    while len(terms) < num_terms:
        t = tuple(sorted(rng.choice(num_qubits, size=locality, replace=False).tolist()))
        if t not in seen:
            seen.add(t)
            terms.append(t)
    return Hamiltonian(num_qubits, tuple(terms))


# file formats ---------------------------------------------------------------


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format (``#`` comments allowed)."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise GraphFormatError(f"bad header line {lines[0]!r}; expected 'n m'") from None
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        try:
            u, v = (int(tok) for tok in line.split())
        except ValueError:
            raise GraphFormatError(f"bad edge line {line!r}") from None
        edges.append((u, v))
    try:
        g = Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    if g.num_edges != m:
        raise GraphFormatError("duplicate edges in edge list")
    return g


def write_edge_list(g: Graph, dest: str | os.PathLike | TextIO) -> None:
    text = format_edge_list(g)
    if isinstance(dest, io.TextIOBase) or hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


def read_edge_list(src: str | os.PathLike | TextIO) -> Graph:
    if hasattr(src, "read"):
        return parse_edge_list(src.read())
    with open(src) as fh:
        return parse_edge_list(fh.read())


def read_hamiltonian(path: str | os.PathLike) -> Hamiltonian:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return Hamiltonian.from_dict(d)


def write_hamiltonian(h: Hamiltonian, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        json.dump(h.to_dict(), fh, indent=2)
        fh.write("\n")


