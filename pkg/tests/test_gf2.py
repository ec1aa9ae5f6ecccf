import pytest
from hypothesis import given, strategies as st

from cifc.gf2 import BinaryMatrix, gf2_rank, hstack, solve, solve_matrix


def test_identity_and_zeros():
    i3 = BinaryMatrix.identity(3)
    assert i3.rank() == 3
    assert (i3 @ i3) == i3
    z = BinaryMatrix.zeros(2, 5)
    assert z.rank() == 0 and z.is_zero()


def test_matmul_known_product():
    a = BinaryMatrix.from_entries([[1, 1], [0, 1]])
    b = BinaryMatrix.from_entries([[1, 0], [1, 1]])
    assert (a @ b) == BinaryMatrix.from_entries([[0, 1], [1, 1]])


def test_row_string_round_trip():
    m = BinaryMatrix.from_row_strings(["01011", "11000"])
    assert m.to_row_strings() == ["01011", "11000"]
    # leftmost character is column 1
    assert m.entry(0, 0) == 0 and m.entry(0, 1) == 1


def test_from_columns_matches_entries():
    m = BinaryMatrix.from_columns([0b011, 0b100], rows=3)
    assert m == BinaryMatrix.from_entries([[1, 0], [1, 0], [0, 1]])
    assert m.columns() == [0b011, 0b100]


def test_hstack_ranks():
    a = BinaryMatrix.identity(3)
    b = BinaryMatrix.zeros(3, 2)
    stacked = hstack([a, b])
    assert stacked.cols == 5 and stacked.rank() == 3


def test_solve_consistent_and_inconsistent():
    a = BinaryMatrix.from_entries([[1, 0, 1], [0, 1, 1]])
    x = solve(a, 0b11)
    assert x is not None and a.mul_vec(x) == 0b11
    singular = BinaryMatrix.from_entries([[1, 1], [1, 1]])
    assert solve(singular, 0b01) is None


def test_solve_matrix_round_trip():
    a = BinaryMatrix.from_entries([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    rhs = BinaryMatrix.from_entries([[1, 0], [1, 1], [0, 1]])
    x = solve_matrix(a, rhs)
    assert x is not None and (a @ x) == rhs


@st.composite
def small_matrix(draw):
    rows = draw(st.integers(1, 6))
    cols = draw(st.integers(1, 8))
    words = tuple(draw(st.integers(0, (1 << cols) - 1)) for _ in range(rows))
    return BinaryMatrix(rows, cols, words)


@given(small_matrix(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_operations(m, rng):
    words = list(m.words)
    for _ in range(10):
        i, j = rng.randrange(m.rows), rng.randrange(m.rows)
        if i != j:
            if rng.random() < 0.5:
                words[i] ^= words[j]
            else:
                words[i], words[j] = words[j], words[i]
    assert gf2_rank(words, m.cols) == m.rank()


@given(small_matrix())
def test_rank_bounded_by_shape(m):
    assert 0 <= m.rank() <= min(m.rows, m.cols)
