import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.f2linalg import F2Matrix, F2Vector, kernel_basis, rank, rref, solve


def brute_rank(rows, ncols):
    """Rank via the size of the row span: 2^rank vectors."""
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


small_matrices = st.integers(min_value=1, max_value=6).flatmap(
    lambda ncols: st.tuples(
        st.just(ncols),
        st.lists(
            st.integers(min_value=0, max_value=2**ncols - 1), min_size=1, max_size=6
        ),
    )
)


def test_vector_basics():
    v = F2Vector.from_bits(0b101, 3)
    assert v.weight() == 2
    assert v.to_tuple() == (1, 0, 1)
    assert list(v) == [1, 0, 1]
    assert sorted(v.support()) == [0, 2]
    assert not v.is_zero()
    assert F2Vector.zero(4).is_zero()
    assert F2Vector.unit(1, 3).to_tuple() == (0, 1, 0)


def test_vector_rejects_overflow():
    with pytest.raises(ValueError):
        F2Vector.from_bits(0b1000, 3)


def test_dot():
    a = F2Vector.from_bits(0b110, 3)
    b = F2Vector.from_bits(0b011, 3)
    assert a.dot(b) == 1  # one shared bit
    assert a.dot(a) == 0  # weight 2


def test_rank_known():
    m = F2Matrix.from_row_bits([0b11, 0b01, 0b10], 2)
    assert rank(m) == 2
    assert rank(F2Matrix.identity(5)) == 5
    assert rank(F2Matrix.from_row_bits([0, 0], 3)) == 0


@settings(max_examples=150)
@given(small_matrices)
def test_rank_matches_span_size(data):
    ncols, rows = data
    m = F2Matrix.from_row_bits(rows, ncols)
    assert rank(m) == brute_rank(rows, ncols)


@settings(max_examples=100)
@given(small_matrices)
def test_rref_preserves_row_span(data):
    ncols, rows = data
    m = F2Matrix.from_row_bits(rows, ncols)
    reduced, pivots = rref(m)
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    for r in reduced.rows:
        assert r in span
    assert len(pivots) == rank(m)
    # each pivot column is cleared everywhere except its own row
    for i, p in enumerate(pivots):
        col = [(r >> p) & 1 for r in reduced.rows]
        assert col == [1 if k == i else 0 for k in range(len(reduced.rows))]


@settings(max_examples=100)
@given(small_matrices)
def test_kernel_vectors_annihilate(data):
    ncols, rows = data
    m = F2Matrix.from_row_bits(rows, ncols)
    basis = kernel_basis(m)
    assert len(basis) == ncols - rank(m)
    for v in basis:
        assert m.mul_vector(v).is_zero()
    # basis is independent
    packed = F2Matrix.from_row_bits([v.bits for v in basis], ncols)
    assert rank(packed) == len(basis)


def test_kernel_exhaustive_small():
    # every kernel element is spanned: check by enumeration on 4 columns
    m = F2Matrix.from_row_bits([0b1100, 0b0110], 4)
    basis = kernel_basis(m)
    spanned = {0}
    for v in basis:
        spanned |= {s ^ v.bits for s in spanned}
    true_kernel = {
        bits
        for bits in range(16)
        if m.mul_vector(F2Vector.from_bits(bits, 4)).is_zero()
    }
    assert spanned == true_kernel


@settings(max_examples=100)
@given(small_matrices, st.integers(min_value=0))
def test_solve_round_trip(data, seed):
    ncols, rows = data
    m = F2Matrix.from_row_bits(rows, ncols)
    # build a solvable rhs from a known x, then solve
    x = F2Vector.from_bits(seed % (2**ncols), ncols)
    rhs = m.mul_vector(x)
    got = solve(m, rhs)
    assert got is not None
    assert m.mul_vector(got) == rhs


def test_solve_infeasible():
    m = F2Matrix.from_row_bits([0b01, 0b01], 2)
    rhs = F2Vector.from_bits(0b01, 2)  # rows are equal, rhs components differ
    assert solve(m, rhs) is None


def test_transpose_and_columns():
    m = F2Matrix.from_row_bits([0b01, 0b11, 0b10], 2)
    t = m.transpose()
    assert t.nrows == 2 and t.ncols == 3
    for i in range(m.nrows):
        for j in range(m.ncols):
            assert (m.rows[i] >> j) & 1 == (t.rows[j] >> i) & 1
    cols = [F2Vector.from_bits(t.rows[j], 3) for j in range(t.nrows)]
    assert F2Matrix.from_columns(cols).rows == m.rows


def test_all_invertible_3x3_have_full_rank():
    count = 0
    for rows in itertools.product(range(1, 8), repeat=3):
        if rank(F2Matrix.from_row_bits(list(rows), 3)) == 3:
            count += 1
    assert count == 168  # order of GL(3, F2)
