"""
Exact linear algebra over the rationals.

Every matrix is handed to sympy's DomainMatrix over QQ in sparse format, which
does fraction-free elimination internally. Callers work with plain lists of
Fraction values and never see the sympy types.

"""

from fractions import Fraction
from typing import Sequence

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

Scalar = Fraction | int
Row = Sequence[Scalar]


def to_qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def from_sympy(value: Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def as_domain_matrix(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    """
    Build a sparse DomainMatrix over QQ. Zero entries are dropped, so the
    sparse invariants sympy expects hold.

    """
    entries: dict[int, dict[int, object]] = {}
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ValueError(f"Row {i} has {len(row)} entries, expected {ncols}")
        nonzero = {j: to_qq(value) for j, value in enumerate(row) if value != 0}
        if nonzero:
            entries[i] = nonzero
    return DomainMatrix(entries, (len(rows), ncols), QQ)


def to_rows(matrix: DomainMatrix) -> list[list[Fraction]]:
    converted = matrix.to_Matrix()
    return [
        [from_sympy(converted[i, j]) for j in range(converted.cols)]
        for i in range(converted.rows)
    ]


def row_reduce(
    rows: Sequence[Row], ncols: int
) -> tuple[list[list[Fraction]], tuple[int, ...]]:
    """
    Reduced row echelon form. Returns only the nonzero rows, together with the
    pivot column of each of them.

    """
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = as_domain_matrix(rows, ncols).rref()
    return to_rows(reduced)[: len(pivots)], tuple(pivots)


def rank(rows: Sequence[Row], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """
    Basis of {x : rows · x = 0}, one vector per free column. Each vector has
    a 1 in its free column and zeros in the other free columns.

    """
    reduced, pivots = row_reduce(rows, ncols)
    free_columns = [j for j in range(ncols) if j not in pivots]

    basis: list[list[Fraction]] = []
    for free in free_columns:
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[free]
        basis.append(vector)
    return basis


def solve(columns: Sequence[Row], target: Row) -> list[Fraction] | None:
    """
    Solve Σ x_j · columns[j] = target. Returns the solution with free
    variables set to zero, or None when the system is inconsistent.

    """
    height = len(target)
    width = len(columns)
    augmented = [
        [columns[j][i] for j in range(width)] + [target[i]] for i in range(height)
    ]
    reduced, pivots = row_reduce(augmented, width + 1)
    if width in pivots:
        return None

    solution = [Fraction(0)] * width
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row[width]
    return solution


def inverse(matrix: Sequence[Row]) -> list[list[Fraction]]:
    size = len(matrix)
    return to_rows(as_domain_matrix(matrix, size).inv())


def matmul(left: Sequence[Row], right: Sequence[Row]) -> list[list[Fraction]]:
    inner = len(right)
    ncols = len(right[0]) if right else 0
    product = as_domain_matrix(left, inner) * as_domain_matrix(right, ncols)
    return to_rows(product)


def identity(size: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def same_row_space(first: Sequence[Row], second: Sequence[Row], ncols: int) -> bool:
    """
    Two families span the same subspace exactly when their reduced echelon
    forms agree.

    """
    return row_reduce(first, ncols) == row_reduce(second, ncols)


def from_entries(
    entries: dict[tuple[int, int], Scalar], nrows: int, ncols: int
) -> DomainMatrix:
    """
    Sparse DomainMatrix from (row, column) → value, skipping zeros.

    """
    rows: dict[int, dict[int, object]] = {}
    for (i, j), value in entries.items():
        if value != 0:
            rows.setdefault(i, {})[j] = to_qq(value)
    return DomainMatrix(rows, (nrows, ncols), QQ)


def entry(matrix: DomainMatrix, i: int, j: int) -> Fraction:
    return from_sympy(matrix.getitem_sympy(i, j))
