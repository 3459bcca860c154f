from fractions import Fraction

import pytest

from rootcascade.linalg import (
    entry,
    from_entries,
    identity,
    inverse,
    matmul,
    nullspace,
    rank,
    row_reduce,
    same_row_space,
    solve,
)


def test_row_reduce_drops_zero_rows():
    reduced, pivots = row_reduce([[2, 4, 0], [1, 2, 0], [0, 0, 3]], 3)
    assert pivots == (0, 2)
    assert reduced == [[1, 2, 0], [0, 0, 1]]


def test_row_reduce_rejects_ragged_rows():
    with pytest.raises(ValueError):
        row_reduce([[1, 2], [3]], 2)


def test_nullspace():
    basis = nullspace([[1, 1, -2]], 3)
    assert basis == [[-1, 1, 0], [2, 0, 1]]
    assert nullspace([[1, 0], [0, 1]], 2) == []


def test_rank():
    assert rank([[1, 2], [2, 4]], 2) == 1
    assert rank([], 2) == 0


def test_solve():
    assert solve([[1, 2], [2, 2]], [Fraction(2), Fraction(2)]) == [0, 1]
    assert solve([[1, 2], [2, 4]], [1, 0]) is None


def test_inverse_and_matmul():
    matrix = [[2, 1], [1, 1]]
    assert matmul(matrix, inverse(matrix)) == identity(2)
    assert inverse([[2, 0], [0, 4]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]


def test_same_row_space():
    assert same_row_space([[1, 1], [0, 1]], [[1, 0], [0, 3]], 2)
    assert not same_row_space([[1, 1]], [[1, 0]], 2)


def test_from_entries_skips_zeros():
    matrix = from_entries({(0, 1): Fraction(-1, 3), (1, 0): 0}, 2, 2)
    assert entry(matrix, 0, 1) == Fraction(-1, 3)
    assert entry(matrix, 1, 0) == 0
