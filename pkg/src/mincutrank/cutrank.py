"""Incrementally maintained cut rank of a fixed-size bipartition.

A :class:`CutRankState` keeps, for the current bipartition ``(X, Y)``,
basis sets ``XB`` and ``YB`` with ``C = A[XB, YB]`` invertible, plus the key
matrices

* ``Cinv``  (rows indexed by ``YB``, columns by ``XB``),
* ``DX = A[V, YB] Cinv``,
* ``DY = Cinv A[XB, V]``,
* ``F  = A[V, YB] Cinv A[XB, V] + A``.

The rank change of swapping ``i in X`` with ``j in Y`` is read off a set of
decision tables indexed by a handful of bits of these matrices, so a swap is
evaluated in O(1) after O(n) per-vertex preprocessing.  Applying a swap edits
the basis sets by at most six single pivots, each of which is a rank-one
XOR update of the key matrices (O(n^2) bit operations, O(n) word ops here).

All matrices are stored vertex-indexed (``n x n``) with rows packed into Python
ints.  Each one is kept in both row-major and column-major form so that row
and column queries are both single integer operations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple
from itertools import product
from typing import Iterable, Literal, Sequence

from .gf2 import (
    BitMatrix,
    NotInvertible,
    highest_bit,
    invert,
    iter_bits,
    lowest_bit,
    mul,
    rank_of_rows,
    submatrix,
)
from .graph import Graph

__all__ = [
    "CutRankState",
    "SwapDelta",
    "VertexProfile",
    "StaleSwapError",
    "StateInvariantError",
    "naive_cut_rank",
    "CASE_TABLES",
    "ALL_CASE_IDS",
]


class StaleSwapError(RuntimeError):
    """A :class:`SwapDelta` was applied to a state that changed since evaluation."""


class StateInvariantError(AssertionError):
    """Key matrices or basis sets are inconsistent with their definitions."""


def naive_cut_rank(g: Graph, x: Iterable[int]) -> int:
    """``rank(A[X, V - X])`` by plain Gauss-Jordan elimination.

    The rows of ``A[X, V]`` are masked to the columns of ``Y``; zero columns do
    not change the rank, so no column compaction is needed.
    """
    xs = list(x)
    xmask = 0
    for v in xs:
        xmask |= 1 << v
    ymask = ((1 << g.n) - 1) & ~xmask
    rows = g.rows
    return rank_of_rows(rows[v] & ymask for v in xs)


# ---------------------------------------------------------------------------
# decision tables
#
# Each sub-table lists its predicate columns and rows of
# (predicate values, delta, vertices added to XB, vertices added to YB).
# ``None`` marks a don't-care cell.  Symbols: i, j (the swapped pair), k1, k2,
# k3, alpha, beta (X-side witnesses), l1, l2, l3 (Y-side witnesses).
# ---------------------------------------------------------------------------

T, F_ = True, False

CASE_TABLES: dict[str, tuple[tuple[str, ...], tuple]] = {
    # i in XF, j in YF
    "1": (
        ("P2X", "P2Y", "Fji"),
        (
            ((T, T, None), +2, ("j", "k2"), ("i", "l2")),
            ((T, F_, None), +1, ("k2",), ("i",)),
            ((F_, T, None), +1, ("j",), ("l2",)),
            ((F_, F_, 1), +1, ("j",), ("i",)),
            ((F_, F_, 0), 0, (), ()),
        ),
    ),
    # i in XB, j in YF, P1X(i)
    "2a": (
        ("P2X", "P2Y", "Q"),
        (
            ((T, T, None), +2, ("j", "k1", "k2"), ("i", "alpha", "l2")),
            ((T, F_, None), +1, ("k1", "k2"), ("i", "alpha")),
            ((F_, T, None), +1, ("j", "k1"), ("alpha", "l2")),
            ((F_, F_, 1), +1, ("j", "k1"), ("i", "alpha")),
            ((F_, F_, 0), 0, ("k1",), ("alpha",)),
        ),
    ),
    # i in XB, j in YF, not P1X(i)
    "2b": (
        ("DXji", "P2X", "P2Y", "Fji"),
        (
            ((1, T, None, None), +1, ("j", "k2"), ("i", "alpha")),
            ((1, F_, None, None), 0, ("j",), ("alpha",)),
            ((0, T, T, None), +1, ("j", "k2"), ("i", "l2")),
            ((0, T, F_, None), 0, ("k2",), ("i",)),
            ((0, F_, T, None), 0, ("j",), ("l2",)),
            ((0, F_, F_, 1), 0, ("j",), ("i",)),
            ((0, F_, F_, 0), -1, (), ()),
        ),
    ),
    # i in XF, j in YB, P1Y(j)
    "3a": (
        ("P2Y", "P2X", "Q"),
        (
            ((T, T, None), +2, ("j", "beta", "k2"), ("i", "l1", "l2")),
            ((T, F_, None), +1, ("j", "beta"), ("l1", "l2")),
            ((F_, T, None), +1, ("beta", "k2"), ("i", "l1")),
            ((F_, F_, 1), +1, ("j", "beta"), ("i", "l1")),
            ((F_, F_, 0), 0, ("beta",), ("l1",)),
        ),
    ),
    # i in XF, j in YB, not P1Y(j)
    "3b": (
        ("DYji", "P2Y", "P2X", "Fji"),
        (
            ((1, T, None, None), +1, ("j", "beta"), ("i", "l2")),
            ((1, F_, None, None), 0, ("beta",), ("i",)),
            ((0, T, T, None), +1, ("j", "k2"), ("i", "l2")),
            ((0, T, F_, None), 0, ("j",), ("l2",)),
            ((0, F_, T, None), 0, ("k2",), ("i",)),
            ((0, F_, F_, 1), 0, ("j",), ("i",)),
            ((0, F_, F_, 0), -1, (), ()),
        ),
    ),
    # i in XB, j in YB, Cinv[j,i] = 1, P1X(i) and P1Y(j)
    "4a": (
        ("P2X", "P2Y", "Q"),
        (
            ((T, T, None), +2, ("j", "k1", "k2"), ("i", "l1", "l2")),
            ((T, F_, None), +1, ("k1", "k2"), ("i", "l1")),
            ((F_, T, None), +1, ("j", "k1"), ("l1", "l2")),
            ((F_, F_, 1), +1, ("j", "k1"), ("i", "l1")),
            ((F_, F_, 0), 0, ("k1",), ("l1",)),
        ),
    ),
    # i in XB, j in YB, Cinv[j,i] = 1, not (P1X(i) and P1Y(j))
    "4b": (
        ("P3X", "P3Y", "Q"),
        (
            ((T, T, None), +1, ("j", "k3"), ("i", "l3")),
            ((T, F_, None), 0, ("k3",), ("i",)),
            ((F_, T, None), 0, ("j",), ("l3",)),
            ((F_, F_, 1), 0, ("j",), ("i",)),
            ((F_, F_, 0), -1, (), ()),
        ),
    ),
    # i in XB, j in YB, Cinv[j,i] = 0, P1X(i) and P1Y(j)
    "5a": (
        ("P2X", "P2Y", "Q"),
        (
            ((T, T, None), +2, ("j", "beta", "k1", "k2"), ("i", "alpha", "l1", "l2")),
            ((T, F_, None), +1, ("beta", "k1", "k2"), ("i", "alpha", "l1")),
            ((F_, T, None), +1, ("j", "beta", "k1"), ("alpha", "l1", "l2")),
            ((F_, F_, 1), +1, ("j", "beta", "k1"), ("i", "alpha", "l1")),
            ((F_, F_, 0), 0, ("beta", "k1"), ("alpha", "l1")),
        ),
    ),
    # i in XB, j in YB, Cinv[j,i] = 0, P1X(i) and not P1Y(j)
    "5b": (
        ("P2Y", "DYji", "P2X", "Q"),
        (
            ((T, 1, None, None), +1, ("j", "beta", "k1"), ("i", "alpha", "l2")),
            ((T, 0, T, None), +1, ("j", "k1", "k2"), ("i", "alpha", "l2")),
            ((T, 0, F_, None), 0, ("j", "k1"), ("alpha", "l2")),
            ((F_, 1, None, None), 0, ("beta", "k1"), ("i", "alpha")),
            ((F_, 0, T, None), 0, ("k1", "k2"), ("i", "alpha")),
            ((F_, 0, F_, 1), 0, ("j", "k1"), ("i", "alpha")),
            ((F_, 0, F_, 0), -1, ("k1",), ("alpha",)),
        ),
    ),
    # i in XB, j in YB, Cinv[j,i] = 0, not P1X(i) and P1Y(j)
    "5c": (
        ("P2X", "DXji", "P2Y", "Q"),
        (
            ((T, 1, None, None), +1, ("j", "beta", "k2"), ("i", "alpha", "l1")),
            ((T, 0, T, None), +1, ("j", "beta", "k2"), ("i", "l1", "l2")),
            ((T, 0, F_, None), 0, ("beta", "k2"), ("i", "l1")),
            ((F_, 1, None, None), 0, ("j", "beta"), ("alpha", "l1")),
            ((F_, 0, T, None), 0, ("j", "beta"), ("l1", "l2")),
            ((F_, 0, F_, 1), 0, ("j", "beta"), ("i", "l1")),
            ((F_, 0, F_, 0), -1, ("beta",), ("l1",)),
        ),
    ),
    # i in XB, j in YB, Cinv[j,i] = 0, neither P1X(i) nor P1Y(j)
    "5d": (
        ("DXji", "DYji", "P2X", "P2Y", "Fji"),
        (
            ((1, 1, None, None, None), 0, ("j", "beta"), ("i", "alpha")),
            ((1, 0, T, None, None), 0, ("j", "k2"), ("i", "alpha")),
            ((1, 0, F_, None, None), -1, ("j",), ("alpha",)),
            ((0, 1, None, T, None), 0, ("j", "beta"), ("i", "l2")),
            ((0, 1, None, F_, None), -1, ("beta",), ("i",)),
            ((0, 0, T, T, None), 0, ("j", "k2"), ("i", "l2")),
            ((0, 0, T, F_, None), -1, ("k2",), ("i",)),
            ((0, 0, F_, T, None), -1, ("j",), ("l2",)),
            ((0, 0, F_, F_, 1), -1, ("j",), ("i",)),
            ((0, 0, F_, F_, 0), -2, (), ()),
        ),
    ),
}

_REMOVALS = {
    "1": ((), ()),
    "2": (("i",), ("alpha",)),
    "3": (("beta",), ("j",)),
    "4": (("i",), ("j",)),
    "5": (("i", "beta"), ("j", "alpha")),
}

ALL_CASE_IDS: tuple[str, ...] = tuple(
    f"{name}.{k + 1}" for name, (_, rows) in CASE_TABLES.items() for k in range(len(rows))
)


def _compile(name: str):
    """Expand don't-care cells into a lookup ``key bits -> row``.

    Fails loudly if two rows overlap or some predicate combination is not
    covered.
    """
    cols, rows = CASE_TABLES[name]
    lookup: dict[int, tuple] = {}
    removed_x, removed_y = _REMOVALS[name[0]]
    for k, (vals, delta, add_x, add_y) in enumerate(rows):
        if len(add_x) != len(add_y):
            raise AssertionError(f"table {name} row {k + 1}: unbalanced extension")
        if delta != len(add_x) - len(removed_x):
            raise AssertionError(f"table {name} row {k + 1}: delta inconsistent with edits")
        choices = [(0, 1) if v is None else (int(v),) for v in vals]
        for bits in product(*choices):
            key = 0
            for b in bits:
                key = (key << 1) | b
            if key in lookup:
                raise AssertionError(f"table {name}: rows overlap on {bits}")
            lookup[key] = (f"{name}.{k + 1}", delta, add_x, add_y)
    if len(lookup) != 1 << len(cols):
        raise AssertionError(f"table {name} is not exhaustive")
    return lookup


_LOOKUP = {name: _compile(name) for name in CASE_TABLES}
_L1, _L2A, _L2B, _L3A, _L3B, _L4A, _L4B, _L5A, _L5B, _L5C, _L5D = (
    _LOOKUP[k] for k in ("1", "2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b", "5c", "5d")
)


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SwapDelta:
    """Outcome of evaluating the swap of ``i in X`` with ``j in Y``."""

    i: int
    j: int
    delta: int
    removed_from_xb: tuple[int, ...]
    removed_from_yb: tuple[int, ...]
    added_to_xb: tuple[int, ...]
    added_to_yb: tuple[int, ...]
    case_id: str
    version: int


class VertexProfile(NamedTuple):
    """Per-vertex predicates that do not depend on the swap partner.

    For ``i in X``: ``p1``/``w1`` are P1X(i) and its witness k1, ``p2``/``w2``
    are P2X(i) and k2, ``pivot`` is alpha (only when ``i in XB``), and
    ``p3_masks`` holds the witness masks of P3X(i, j) for ``DY[j,i] = 0`` and
    ``= 1``.  For ``j in Y`` the same fields hold P1Y, l1, P2Y, l2, beta and the
    masks of P3Y(i, j) for ``DX[j,i] = 0`` and ``= 1``.  The ``f_w1`` field is
    ``F[k1,i]`` (resp. ``F[j,l1]``), needed by the Q expressions.
    """

    vertex: int
    in_basis: bool
    p1: bool
    w1: int
    p2: bool
    w2: int
    pivot: int
    f_w1: int
    p3_masks: tuple[int, int]


Witness = Literal["lowest", "highest"]


class CutRankState:
    """Incremental cut-rank oracle for a bipartition ``(X, V - X)``.

    Parameters
    ----------
    graph : Graph
    x : iterable of int
        The vertex set ``X``; its complement must be nonempty.
    witness : {"lowest", "highest"}
        Which qualifying vertex to use when a predicate's witness is free to
        choose.  Deltas do not depend on it; basis edits may.
    debug : bool
        Recompute every key matrix from its definition after each swap and
        raise :class:`StateInvariantError` on any disagreement.
    """

    def __init__(self, graph: Graph, x: Iterable[int], *, witness: Witness = "lowest", debug: bool = False):
        n = graph.n
        xmask = 0
        for v in x:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            xmask |= 1 << v
        full = (1 << n) - 1
        if xmask == full:
            raise ValueError("complement of X must be nonempty")
        if witness not in ("lowest", "highest"):
            raise ValueError(f"unknown witness policy {witness!r}")
        self.graph = graph
        self.n = n
        self._full = full
        self._x = xmask
        self._pick = lowest_bit if witness == "lowest" else highest_bit
        self.witness = witness
        self.debug = debug
        self.version = 0
        self._iprof: dict[int, VertexProfile] = {}
        self._jprof: dict[int, VertexProfile] = {}
        self._xb, self._yb = _find_bases(graph, xmask)
        self._load_definitional()
        if debug:
            self.check_invariants()

    # ------------------------------------------------------------------
    # views

    @property
    def rank(self) -> int:
        return self._xb.bit_count()

    @property
    def x(self) -> frozenset[int]:
        return frozenset(iter_bits(self._x))

    @property
    def y(self) -> frozenset[int]:
        return frozenset(iter_bits(self._full & ~self._x))

    @property
    def xb(self) -> list[int]:
        return list(iter_bits(self._xb))

    @property
    def yb(self) -> list[int]:
        return list(iter_bits(self._yb))

    @property
    def x_mask(self) -> int:
        return self._x

    def in_x(self, v: int) -> bool:
        return bool((self._x >> v) & 1)

    def cinv(self) -> BitMatrix:
        """``C^{-1}`` as an ``r x r`` matrix, rows in sorted ``YB``, columns in sorted ``XB`` order."""
        return _compact(self._ci_rows, self.yb, self.xb)

    def dx(self) -> BitMatrix:
        """``D_X`` as ``n x r`` (columns in sorted ``XB`` order)."""
        return _compact(self._dx_rows, range(self.n), self.xb)

    def dy(self) -> BitMatrix:
        """``D_Y`` as ``r x n`` (rows in sorted ``YB`` order)."""
        return _compact(self._dy_rows, self.yb, range(self.n))

    def f(self) -> BitMatrix:
        return BitMatrix(self.n, self.n, self._f_rows)

    def copy(self) -> "CutRankState":
        other = object.__new__(CutRankState)
        other.__dict__.update(self.__dict__)
        for name in ("_f_rows", "_f_cols", "_dx_rows", "_dx_cols", "_dy_rows", "_dy_cols", "_ci_rows", "_ci_cols"):
            setattr(other, name, list(getattr(self, name)))
        other._iprof = {}
        other._jprof = {}
        return other

    # ------------------------------------------------------------------
    # construction helpers

    def _load_definitional(self) -> None:
        ci, dx, dy, f = _definitional_matrices(self.graph, self._xb, self._yb)
        self._ci_rows, self._ci_cols = ci.data, ci.transpose().data
        self._dx_rows, self._dx_cols = dx.data, dx.transpose().data
        self._dy_rows, self._dy_cols = dy.data, dy.transpose().data
        self._f_rows, self._f_cols = f.data, f.transpose().data

    # ------------------------------------------------------------------
    # per-vertex predicates

    def profile_x(self, i: int) -> VertexProfile:
        """Swap-partner-independent predicates of ``i in X`` (cached per version)."""
        prof = self._iprof.get(i)
        if prof is not None:
            return prof
        if not (self._x >> i) & 1:
            raise ValueError(f"vertex {i} is not in X")
        xf = self._x & ~self._xb
        fcol = self._f_cols[i]
        if not (self._xb >> i) & 1:
            m2 = fcol & xf & ~(1 << i)
            prof = VertexProfile(i, False, False, -1, m2 != 0, self._pick(m2) if m2 else -1, -1, 0, (0, 0))
        else:
            pick = self._pick
            dxcol = self._dx_cols[i]
            m1 = dxcol & xf
            if m1:
                k1 = pick(m1)
                fk1 = (fcol >> k1) & 1
                m2 = (fcol ^ dxcol if fk1 else fcol) & xf & ~(1 << k1)
            else:
                k1, fk1 = -1, 0
                m2 = fcol & xf
            prof = VertexProfile(
                i, True, k1 >= 0, k1, m2 != 0, pick(m2) if m2 else -1,
                pick(self._ci_cols[i]), fk1, (fcol & xf, (fcol ^ dxcol) & xf),
            )
        self._iprof[i] = prof
        return prof

    def profile_y(self, j: int) -> VertexProfile:
        """Swap-partner-independent predicates of ``j in Y`` (cached per version)."""
        prof = self._jprof.get(j)
        if prof is not None:
            return prof
        if (self._x >> j) & 1:
            raise ValueError(f"vertex {j} is not in Y")
        yf = self._full & ~self._x & ~self._yb
        frow = self._f_rows[j]
        if not (self._yb >> j) & 1:
            m2 = frow & yf & ~(1 << j)
            prof = VertexProfile(j, False, False, -1, m2 != 0, self._pick(m2) if m2 else -1, -1, 0, (0, 0))
        else:
            pick = self._pick
            dyrow = self._dy_rows[j]
            m1 = dyrow & yf
            if m1:
                l1 = pick(m1)
                fl1 = (frow >> l1) & 1
                m2 = (frow ^ dyrow if fl1 else frow) & yf & ~(1 << l1)
            else:
                l1, fl1 = -1, 0
                m2 = frow & yf
            prof = VertexProfile(
                j, True, l1 >= 0, l1, m2 != 0, pick(m2) if m2 else -1,
                pick(self._ci_rows[j]), fl1, (frow & yf, (frow ^ dyrow) & yf),
            )
        self._jprof[j] = prof
        return prof

    # ------------------------------------------------------------------
    # evaluation

    def _classify(self, i: int, j: int):
        """Return (table row, i profile, j profile, DX[j,i], DY[j,i]) for a swap."""
        pi = self._iprof.get(i)
        if pi is None:
            pi = self.profile_x(i)
        pj = self._jprof.get(j)
        if pj is None:
            pj = self.profile_y(j)
        _, ib, ip1, _, ip2, _, _, ifw, im3 = pi
        _, jb, jp1, _, jp2, _, _, jfw, jm3 = pj
        fji = (self._f_rows[j] >> i) & 1
        if not ib:
            if not jb:
                return _L1[(ip2 << 2) | (jp2 << 1) | fji], pi, pj, 0, 0
            dyji = (self._dy_rows[j] >> i) & 1
            if jp1:
                row = _L3A[(jp2 << 2) | (ip2 << 1) | (fji ^ (dyji & jfw))]
            else:
                row = _L3B[(dyji << 3) | (jp2 << 2) | (ip2 << 1) | fji]
            return row, pi, pj, 0, dyji
        dxji = (self._dx_rows[j] >> i) & 1
        if not jb:
            if ip1:
                row = _L2A[(ip2 << 2) | (jp2 << 1) | (fji ^ (dxji & ifw))]
            else:
                row = _L2B[(dxji << 3) | (ip2 << 2) | (jp2 << 1) | fji]
            return row, pi, pj, dxji, 0
        dyji = (self._dy_rows[j] >> i) & 1
        if (self._ci_rows[j] >> i) & 1:
            if ip1 and jp1:
                q = fji ^ (dxji & ifw) ^ (dyji & jfw) ^ (ifw & jfw)
                row = _L4A[(ip2 << 2) | (jp2 << 1) | q]
            else:
                p3x = im3[dyji] != 0
                p3y = jm3[dxji] != 0
                row = _L4B[(p3x << 2) | (p3y << 1) | (fji ^ (dxji & dyji))]
        elif ip1 and jp1:
            q = fji ^ (dxji & ifw) ^ (dyji & jfw)
            row = _L5A[(ip2 << 2) | (jp2 << 1) | q]
        elif ip1:
            row = _L5B[(jp2 << 3) | (dyji << 2) | (ip2 << 1) | (fji ^ (dxji & ifw))]
        elif jp1:
            row = _L5C[(ip2 << 3) | (dxji << 2) | (jp2 << 1) | (fji ^ (dyji & jfw))]
        else:
            row = _L5D[(dxji << 4) | (dyji << 3) | (ip2 << 2) | (jp2 << 1) | fji]
        return row, pi, pj, dxji, dyji

    def _check_pair(self, i: int, j: int) -> None:
        if not (0 <= i < self.n and (self._x >> i) & 1):
            raise ValueError(f"vertex {i} is not in X")
        if not (0 <= j < self.n) or (self._x >> j) & 1:
            raise ValueError(f"vertex {j} is not in Y")

    def swap_delta(self, i: int, j: int) -> int:
        """Cut-rank change of swapping ``i`` and ``j`` (no basis bookkeeping)."""
        self._check_pair(i, j)
        return self._classify(i, j)[0][1]

    def evaluate_swap(self, i: int, j: int) -> SwapDelta:
        """Rank change and basis edits of swapping ``i in X`` with ``j in Y``.

        The state is not modified.
        """
        self._check_pair(i, j)
        return self._build_delta(i, j, self._classify(i, j))

    def _build_delta(self, i: int, j: int, classified) -> SwapDelta:
        (case_id, delta, add_x, add_y), pi, pj, dxji, dyji = classified
        pick = self._pick
        sym = {
            "i": i,
            "j": j,
            "k1": pi.w1,
            "k2": pi.w2,
            "alpha": pi.pivot,
            "l1": pj.w1,
            "l2": pj.w2,
            "beta": pj.pivot,
        }
        if case_id[0] == "4":
            m = pi.p3_masks[dyji]
            sym["k3"] = pick(m) if m else -1
            m = pj.p3_masks[dxji]
            sym["l3"] = pick(m) if m else -1
        rem_x, rem_y = _REMOVALS[case_id[0]]
        out = []
        for names in (rem_x, rem_y, add_x, add_y):
            vs = tuple(sym[name] for name in names)
            if -1 in vs:
                raise AssertionError(f"undefined witness requested in case {case_id}")
            out.append(vs)
        return SwapDelta(i, j, delta, out[0], out[1], out[2], out[3], case_id, self.version)

    def evaluate_all_swaps(self, i: int) -> list[SwapDelta]:
        """:meth:`evaluate_swap` for ``i`` against every ``j in Y`` (ascending ``j``).

        The predicates of ``i`` are computed once, those of each ``j`` once per
        state version; each pair then costs a constant number of bit lookups.
        """
        self.profile_x(i)
        return [self.evaluate_swap(i, j) for j in iter_bits(self._full & ~self._x)]

    # ------------------------------------------------------------------
    # updates

    def _pivot(self, a: int, b: int, c: int, d: int) -> None:
        """Tableau pivot: ``Cinv += a b^T, DX += c b^T, DY += a d^T, F += c d^T``."""
        for rows, cols, u, w in (
            (self._ci_rows, self._ci_cols, a, b),
            (self._dx_rows, self._dx_cols, c, b),
            (self._dy_rows, self._dy_cols, a, d),
            (self._f_rows, self._f_cols, c, d),
        ):
            m = u
            while m:
                low = m & -m
                rows[low.bit_length() - 1] ^= w
                m ^= low
            m = w
            while m:
                low = m & -m
                cols[low.bit_length() - 1] ^= u
                m ^= low

    def _add_pair(self, x: int, y: int) -> None:
        """Grow the bases by ``x`` and ``y``; requires ``F[x, y] = 1``."""
        if not (self._f_rows[x] >> y) & 1:
            raise StateInvariantError(f"cannot extend basis with ({x}, {y}): F[x,y] = 0")
        self._pivot(
            self._dy_cols[y] | (1 << y),
            self._dx_rows[x] | (1 << x),
            self._f_cols[y],
            self._f_rows[x],
        )
        self._xb |= 1 << x
        self._yb |= 1 << y

    def _remove_pair(self, x: int, y: int) -> None:
        """Shrink the bases by ``x`` and ``y``; requires ``Cinv[y, x] = 1``."""
        if not (self._ci_rows[y] >> x) & 1:
            raise StateInvariantError(f"cannot reduce basis by ({x}, {y}): Cinv[y,x] = 0")
        self._pivot(self._ci_cols[x], self._ci_rows[y], self._dx_cols[x], self._dy_rows[y])
        self._xb &= ~(1 << x)
        self._yb &= ~(1 << y)

    @staticmethod
    def _pair_off(xs: Sequence[int], ys: Sequence[int], ok, op) -> None:
        # Any pairing works as long as each pivot entry is 1 at its turn; an
        # invertible block always admits one greedily.
        pending = list(ys)
        for x in xs:
            for k, y in enumerate(pending):
                if ok(x, y):
                    op(x, y)
                    del pending[k]
                    break
            else:
                raise StateInvariantError(f"no valid pivot for {x} among {pending}")

    def apply_swap(self, d: SwapDelta) -> None:
        """Apply an evaluated swap in place and maintain all key matrices."""
        if d.version != self.version:
            raise StaleSwapError(f"swap evaluated at version {d.version}, state is at {self.version}")
        i, j = d.i, d.j
        ci, f = self._ci_rows, self._f_rows
        self._pair_off(d.removed_from_xb, d.removed_from_yb, lambda x, y: (ci[y] >> x) & 1, self._remove_pair)
        self._x ^= (1 << i) | (1 << j)
        self._pair_off(d.added_to_xb, d.added_to_yb, lambda x, y: (f[x] >> y) & 1, self._add_pair)
        self.version += 1
        self._iprof.clear()
        self._jprof.clear()
        if self.debug:
            self.check_invariants()

    def swap(self, i: int, j: int) -> SwapDelta:
        """Evaluate and immediately apply the swap of ``i`` and ``j``."""
        d = self.evaluate_swap(i, j)
        self.apply_swap(d)
        return d

    # ------------------------------------------------------------------
    # verification

    def check_invariants(self) -> None:
        """Raise :class:`StateInvariantError` unless every documented invariant holds."""
        g = self.graph
        xb, yb = self._xb, self._yb
        if xb & ~self._x or yb & self._x:
            raise StateInvariantError("basis sets escape their partition sides")
        if xb.bit_count() != yb.bit_count():
            raise StateInvariantError("basis sets differ in size")
        naive = naive_cut_rank(g, iter_bits(self._x))
        if naive != self.rank:
            raise StateInvariantError(f"rank {self.rank} but naive rank is {naive}")
        try:
            ci, dx, dy, f = _definitional_matrices(g, xb, yb)
        except NotInvertible:
            raise StateInvariantError("A[XB, YB] is singular") from None
        for name, ref, rows, cols in (
            ("Cinv", ci, self._ci_rows, self._ci_cols),
            ("DX", dx, self._dx_rows, self._dx_cols),
            ("DY", dy, self._dy_rows, self._dy_cols),
            ("F", f, self._f_rows, self._f_cols),
        ):
            if ref.data != rows:
                raise StateInvariantError(f"{name} differs from its definition")
            if ref.transpose().data != cols:
                raise StateInvariantError(f"column store of {name} out of sync")
        # the basis generates the free part of the cut matrix
        xs_f = list(iter_bits(self._x & ~xb))
        ys_f = list(iter_bits(self._full & ~self._x & ~yb))
        xs_b, ys_b = list(iter_bits(xb)), list(iter_bits(yb))
        adj = g.adjacency
        lhs = mul(mul(submatrix(adj, xs_f, ys_b), _compact(self._ci_rows, ys_b, xs_b)), submatrix(adj, xs_b, ys_f))
        if lhs != submatrix(adj, xs_f, ys_f):
            raise StateInvariantError("basis does not generate A[XF, YF]")


# ---------------------------------------------------------------------------
# helpers


def _find_bases(g: Graph, xmask: int) -> tuple[int, int]:
    """Basis rows and columns of ``A[X, Y]`` by Gaussian elimination.

    Rows of ``X`` are reduced in ascending order; an independent row joins
    ``XB`` and the lowest set bit of its reduced form (a pivot column of the
    echelon form) joins ``YB``.
    """
    ymask = ((1 << g.n) - 1) & ~xmask
    rows = g.rows
    basis: list[int] = []  # echelon rows; lowest bits strictly increase
    xb = yb = 0
    for v in iter_bits(xmask):
        r = rows[v] & ymask
        for b in basis:
            if r & b & -b:
                r ^= b
        if r:
            low = r & -r
            xb |= 1 << v
            yb |= low
            k = 0
            while k < len(basis) and (basis[k] & -basis[k]) < low:
                k += 1
            basis.insert(k, r)
    return xb, yb


def _definitional_matrices(g: Graph, xb: int, yb: int):
    """``(Cinv, DX, DY, F)`` as vertex-indexed ``n x n`` matrices, from scratch."""
    n = g.n
    adj = g.rows
    xs, ys = list(iter_bits(xb)), list(iter_bits(yb))
    small = invert(submatrix(g.adjacency, xs, ys))  # rows ~ ys, cols ~ xs
    ci = BitMatrix(n, n)
    for a, y in enumerate(ys):
        v = 0
        for b in iter_bits(small.data[a]):
            v |= 1 << xs[b]
        ci.data[y] = v
    a_cols_yb = BitMatrix(n, n, [row & yb for row in adj])  # A[V, YB]
    a_rows_xb = BitMatrix(n, n, [adj[v] if (xb >> v) & 1 else 0 for v in range(n)])  # A[XB, V]
    dx = mul(a_cols_yb, ci)
    dy = mul(ci, a_rows_xb)
    f = mul(dx, a_rows_xb) + BitMatrix(n, n, list(adj))
    return ci, dx, dy, f


def _compact(rows: Sequence[int], row_ids: Iterable[int], col_ids: Iterable[int]) -> BitMatrix:
    row_ids = list(row_ids)
    col_ids = list(col_ids)
    out = []
    for r in row_ids:
        v = rows[r]
        acc = 0
        for k, c in enumerate(col_ids):
            if (v >> c) & 1:
                acc |= 1 << k
        out.append(acc)
    return BitMatrix(len(row_ids), len(col_ids), out)


def case_histogram(deltas: Iterable[SwapDelta]) -> Counter:
    return Counter(d.case_id for d in deltas)
