"""Dense linear algebra over GF(2) on bit-packed rows.

Each row of a :class:`BitMatrix` is a Python ``int`` whose bit ``c`` holds
entry ``(row, c)``.  Row XOR, the elimination kernel, is then a single
word-parallel integer XOR.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "NotInvertible",
    "rank",
    "rank_of_rows",
    "mul",
    "invert",
    "rank_one_decompose",
    "submatrix",
    "iter_bits",
    "lowest_bit",
    "highest_bit",
]


class NotInvertible(ValueError):
    """Raised when a square GF(2) matrix is singular."""


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def highest_bit(mask: int) -> int:
    return mask.bit_length() - 1


def rank_of_rows(rows: Iterable[int]) -> int:
    """GF(2) rank of a collection of bit rows (Gauss-Jordan elimination)."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        low = pivot & -pivot
        rank += 1
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


class BitMatrix:
    """A dense ``rows x cols`` matrix over GF(2) with bit-packed rows.

    Padding bits beyond ``cols`` are always zero.  Values are treated as
    immutable by every function in this package except the explicit
    in-place methods (:meth:`set`, :meth:`xor_outer`).
    """

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: Sequence[int] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        if data is None:
            self.data = [0] * nrows
        else:
            if len(data) != nrows:
                raise ValueError(f"expected {nrows} rows, got {len(data)}")
            full = (1 << ncols) - 1
            self.data = list(data)
            for r in self.data:
                if r < 0 or r & ~full:
                    raise ValueError("row has bits outside the column range")

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        """Build from nested 0/1 sequences, e.g. ``[[1, 1, 0], [0, 0, 1]]``."""
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            v = 0
            for c, bit in enumerate(row):
                if bit not in (0, 1):
                    raise ValueError(f"entry {bit!r} is not 0 or 1")
                if bit:
                    v |= 1 << c
            data.append(v)
        return cls(len(rows), ncols, data)

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls.from_rows((arr % 2).astype(int).tolist(), ncols=arr.shape[1])

    @classmethod
    def from_bitstrings(cls, rows: Sequence[str]) -> "BitMatrix":
        """Build from strings such as ``"110"`` (leftmost character is column 0)."""
        return cls.from_rows([[int(ch) for ch in s] for s in rows])

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for r, v in enumerate(self.data):
            for c in iter_bits(v):
                out[r, c] = 1
        return out

    def to_bitstrings(self) -> list[str]:
        return ["".join("1" if (v >> c) & 1 else "0" for c in range(self.ncols)) for v in self.data]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.nrows, self.ncols, self.data)

    # element access ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        r, c = idx
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"index {idx} out of range for shape {self.shape}")
        return (self.data[r] >> c) & 1

    def set(self, r: int, c: int, value: int) -> None:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"index {(r, c)} out of range for shape {self.shape}")
        if value & 1:
            self.data[r] |= 1 << c
        else:
            self.data[r] &= ~(1 << c)

    def column(self, c: int) -> int:
        """Column ``c`` as a bit mask over row indices."""
        v = 0
        bit = 1 << c
        for r, row in enumerate(self.data):
            if row & bit:
                v |= 1 << r
        return v

    def xor_outer(self, u: int, w: int) -> None:
        """In place ``M += u * w^T``; ``u`` masks rows, ``w`` masks columns."""
        data = self.data
        for r in iter_bits(u):
            data[r] ^= w

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.data)))

    def __repr__(self) -> str:
        body = ", ".join(repr(s) for s in self.to_bitstrings())
        return f"BitMatrix({self.nrows}x{self.ncols}, [{body}])"

    def is_zero(self) -> bool:
        return not any(self.data)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.ncols
        for r, v in enumerate(self.data):
            bit = 1 << r
            for c in iter_bits(v):
                out[c] |= bit
        return BitMatrix(self.ncols, self.nrows, out)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.data, other.data)])

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mul(self, other)

    def rank(self) -> int:
        return rank(self)


def rank(m: BitMatrix) -> int:
    """GF(2) rank by Gauss-Jordan elimination; ``m`` is left untouched."""
    return rank_of_rows(m.data)


def mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2) (XOR-accumulate of the rows of ``b``)."""
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    brows = b.data
    out = []
    for v in a.data:
        acc = 0
        for k in iter_bits(v):
            acc ^= brows[k]
        out.append(acc)
    return BitMatrix(a.nrows, b.ncols, out)


def invert(m: BitMatrix) -> BitMatrix:
    """Inverse over GF(2).

    Raises
    ------
    NotInvertible
        If ``m`` is singular.
    ValueError
        If ``m`` is not square.
    """
    n = m.nrows
    if m.ncols != n:
        raise ValueError(f"cannot invert non-square matrix of shape {m.shape}")
    # augmented [M | I]; the identity part lives in bits n..2n-1
    work = [row | (1 << (n + r)) for r, row in enumerate(m.data)]
    for col in range(n):
        bit = 1 << col
        for p in range(col, n):
            if work[p] & bit:
                break
        else:
            raise NotInvertible("matrix is singular over GF(2)")
        work[col], work[p] = work[p], work[col]
        prow = work[col]
        for r in range(n):
            if r != col and work[r] & bit:
                work[r] ^= prow
    return BitMatrix(n, n, [row >> n for row in work])


def rank_one_decompose(m: BitMatrix) -> list[tuple[int, int]]:
    """Split ``m`` into ``rank(m)`` rank-one terms ``u_t v_t^T``.

    Elimination takes the first nonzero row of the working matrix as the
    pivot row and its lowest set column as the pivot column; the term
    emitted is (pivot column of the working matrix, pivot row).  Vectors are
    returned as bit masks, ``u`` over row indices and ``v`` over column
    indices.
    """
    work = list(m.data)
    terms = []
    for p, prow in enumerate(work):
        if not prow:
            continue
        bit = prow & -prow
        u = 0
        for r in range(p, len(work)):
            if work[r] & bit:
                u |= 1 << r
                work[r] ^= prow
        terms.append((u, prow))
    return terms


def submatrix(m: BitMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> BitMatrix:
    """Rows ``row_idx`` and columns ``col_idx`` of ``m``, in the given order."""
    row_idx = list(row_idx)
    col_idx = list(col_idx)
    if len(set(row_idx)) != len(row_idx) or len(set(col_idx)) != len(col_idx):
        raise ValueError("duplicate indices")
    for r in row_idx:
        if not 0 <= r < m.nrows:
            raise IndexError(f"row index {r} out of range")
    for c in col_idx:
        if not 0 <= c < m.ncols:
            raise IndexError(f"column index {c} out of range")
    out = []
    for r in row_idx:
        v = m.data[r]
        acc = 0
        for k, c in enumerate(col_idx):
            if (v >> c) & 1:
                acc |= 1 << k
        out.append(acc)
    return BitMatrix(len(row_idx), len(col_idx), out)
