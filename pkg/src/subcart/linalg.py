"""Exact rational linear algebra: reduced row echelon form, ranks, and
pivot-normalized null-space bases.

Matrices are sequences of equal-length rows of Fractions.  Everything here
is deterministic: pivots are chosen by the leftmost-column rule, breaking
ties by taking the topmost nonzero row, so identical inputs always produce
identical outputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]
Vector = tuple[Fraction, ...]


def rref(matrix: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form via exact Gauss-Jordan elimination.

    Returns the reduced matrix and the list of pivot column indices
    (0-based, ascending).
    """
    rows = [list(map(Fraction, row)) for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    row_at = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row_at, len(rows)):
            if rows[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[row_at], rows[pivot_row] = rows[pivot_row], rows[row_at]
        pivot = rows[row_at][col]
        rows[row_at] = [x / pivot for x in rows[row_at]]
        for r in range(len(rows)):
            if r != row_at and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[row_at])]
        pivots.append(col)
        row_at += 1
    return rows, pivots


def rank(matrix: Matrix) -> int:
    return len(rref(matrix)[1])


def kernel_basis(matrix: Matrix, ncols: int) -> list[Vector]:
    """Pivot-normalized basis of the null space.

    One basis vector per free column (ascending), each carrying a 1 in its
    own free column and 0 in every other free column, so the free-column
    submatrix of the basis is the identity.
    """
    if not matrix:
        return [
            tuple(Fraction(1) if i == f else Fraction(0) for i in range(ncols))
            for f in range(ncols)
        ]
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def submatrix_columns(matrix: Matrix, columns: Sequence[int]) -> list[list[Fraction]]:
    return [[row[c] for c in columns] for row in matrix]


def solve_with_pivots(
    matrix: Matrix, ncols: int, pivot_columns: Sequence[int]
) -> list[Vector]:
    """Kernel basis normalized to the identity on the complement of a
    prescribed pivot-column set.

    Requires the pivot submatrix to have full column rank equal to the rank
    of the whole matrix; returns None when the prescribed pattern is not
    valid at this matrix (rank drop or column dependence).
    """
    pivot_columns = list(pivot_columns)
    free = [c for c in range(ncols) if c not in pivot_columns]
    total_rank = rank(matrix)
    if total_rank != len(pivot_columns):
        return None
    if pivot_columns and rank(submatrix_columns(matrix, pivot_columns)) != len(
        pivot_columns
    ):
        return None
    # reorder columns as (pivots, free); leftmost-pivot RREF then lands
    # exactly on the prescribed pattern
    order = pivot_columns + free
    reduced, pivots = rref(submatrix_columns(matrix, order))
    if pivots != list(range(len(pivot_columns))):
        return None
    basis = []
    for k, f in enumerate(free):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[pivot_columns[p]] = -row[len(pivot_columns) + k]
        basis.append(tuple(v))
    return basis


def matrix_vector(matrix: Matrix, vector: Sequence[Fraction]) -> Vector:
    return tuple(
        sum((a * b for a, b in zip(row, vector)), Fraction(0)) for row in matrix
    )


def in_span(vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    """Exact membership of target in the span of the given vectors."""
    if all(x == 0 for x in target):
        return True
    if not vectors:
        return False
    stacked = [list(v) for v in vectors]
    return rank(stacked) == rank(stacked + [list(target)])
