import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mincutrank import gf2
from mincutrank.gf2 import BitMatrix, NotInvertible

from conftest import bit_matrices, gf2_rank_reference


def test_bitstring_roundtrip_and_column_order():
    m = BitMatrix.from_bitstrings(["110", "001"])
    assert m[0, 0] == 1 and m[0, 2] == 0 and m[1, 2] == 1
    assert m.to_bitstrings() == ["110", "001"]
    assert m.data == [0b011, 0b100]


def test_constructor_rejects_stray_bits():
    with pytest.raises(ValueError):
        BitMatrix(1, 2, [0b100])
    with pytest.raises(ValueError):
        BitMatrix(2, 2, [0])


def test_from_rows_rejects_non_binary_entries():
    with pytest.raises(ValueError):
        BitMatrix.from_rows([[0, 2]])


@pytest.mark.parametrize(
    "rows, expected",
    [
        (["11", "11"], 1),
        (["10", "01"], 2),
        (["110", "011", "101"], 2),  # third row is the sum of the first two
        (["000", "000"], 0),
    ],
)
def test_rank_small_cases(rows, expected):
    assert gf2.rank(BitMatrix.from_bitstrings(rows)) == expected


def test_rank_of_empty_shapes():
    assert gf2.rank(BitMatrix(0, 5)) == 0
    assert gf2.rank(BitMatrix(4, 0)) == 0


@given(bit_matrices())
@settings(max_examples=300, deadline=None)
def test_rank_matches_reference(a):
    assert gf2.rank(BitMatrix.from_array(a)) == gf2_rank_reference(a)


@given(bit_matrices())
@settings(max_examples=200, deadline=None)
def test_rank_is_transpose_invariant(a):
    m = BitMatrix.from_array(a)
    assert m.rank() == m.T.rank()


@given(bit_matrices(max_rows=8, max_cols=8), st.data())
@settings(max_examples=200, deadline=None)
def test_mul_matches_numpy(a, data):
    k = data.draw(st.integers(0, 8))
    b = np.array(
        data.draw(st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=a.shape[1], max_size=a.shape[1])),
        dtype=np.int64,
    ).reshape(a.shape[1], k)
    got = gf2.mul(BitMatrix.from_array(a), BitMatrix.from_array(b)).to_array()
    np.testing.assert_array_equal(got, (a.astype(np.int64) @ b) % 2)


def test_mul_shape_mismatch():
    with pytest.raises(ValueError):
        BitMatrix(2, 3) @ BitMatrix(2, 3)


def test_invert_known_matrix():
    m = BitMatrix.from_bitstrings(["11", "01"])
    inv = gf2.invert(m)
    assert inv == m  # [[1,1],[0,1]] is its own inverse mod 2
    assert inv @ m == BitMatrix.identity(2)


def test_invert_singular_and_nonsquare():
    with pytest.raises(NotInvertible):
        gf2.invert(BitMatrix.from_bitstrings(["11", "11"]))
    with pytest.raises(ValueError):
        gf2.invert(BitMatrix(2, 3))
    assert issubclass(NotInvertible, ValueError)


@given(bit_matrices(max_rows=9, max_cols=9))
@settings(max_examples=300, deadline=None)
def test_invert_roundtrip_or_singular(a):
    if a.shape[0] != a.shape[1]:
        a = a[: min(a.shape), : min(a.shape)]
    m = BitMatrix.from_array(a)
    n = m.nrows
    if gf2_rank_reference(a) < n:
        with pytest.raises(NotInvertible):
            gf2.invert(m)
    else:
        inv = gf2.invert(m)
        assert m @ inv == BitMatrix.identity(n)
        assert inv @ m == BitMatrix.identity(n)


def _outer_sum(terms, nrows, ncols):
    acc = BitMatrix(nrows, ncols)
    for u, v in terms:
        acc.xor_outer(u, v)
    return acc


@given(bit_matrices())
@settings(max_examples=300, deadline=None)
def test_rank_one_decompose_sums_back(a):
    m = BitMatrix.from_array(a)
    terms = gf2.rank_one_decompose(m)
    assert len(terms) == gf2_rank_reference(a)
    assert all(u and v for u, v in terms)
    assert _outer_sum(terms, m.nrows, m.ncols) == m


def test_rank_one_decompose_is_deterministic():
    # rows 0,1 of the worked example cut: [[1,1,0],[1,1,1],[0,0,1]]
    m = BitMatrix.from_bitstrings(["110", "111", "001"])
    assert gf2.rank_one_decompose(m) == [(0b011, 0b011), (0b110, 0b100)]
    assert gf2.rank_one_decompose(BitMatrix(3, 3)) == []


def test_submatrix_order_and_errors():
    m = BitMatrix.from_bitstrings(["100", "010", "001"])
    s = gf2.submatrix(m, [2, 0], [0, 2])
    assert s.to_bitstrings() == ["01", "10"]
    with pytest.raises(ValueError):
        gf2.submatrix(m, [0, 0], [1])
    with pytest.raises(IndexError):
        gf2.submatrix(m, [3], [1])


def test_bit_helpers():
    assert list(gf2.iter_bits(0b101001)) == [0, 3, 5]
    assert gf2.lowest_bit(0b101000) == 3
    assert gf2.highest_bit(0b101000) == 5
    assert gf2.lowest_bit(0) == -1


def test_add_is_xor_and_transpose_involution():
    a = BitMatrix.from_bitstrings(["101", "011"])
    assert (a + a).is_zero()
    assert a.T.T == a
    assert a.T.shape == (3, 2)
    np.testing.assert_array_equal(a.to_array(), np.array([[1, 0, 1], [0, 1, 1]]))
