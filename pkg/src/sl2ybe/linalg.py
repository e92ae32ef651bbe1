"""Small dense matrix helpers over exact scalar types.

Matrices are tuples of tuples.  Entries may be Fraction or QuadExt
(mixed freely; QuadExt absorbs rationals), anything supporting the
arithmetic operators and equality with 0.
"""
from __future__ import annotations

from fractions import Fraction

Matrix = tuple

__all__ = [
    "diag_mul_left",
    "diag_mul_right",
    "diagonal",
    "identity",
    "is_zero_matrix",
    "mat_add",
    "mat_eq",
    "mat_mul",
    "mat_scale",
    "mat_sub",
    "span_rank",
    "transpose",
]


def identity(dim: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))


def diagonal(entries) -> Matrix:
    entries = list(entries)
    dim = len(entries)
    zero = [e * 0 for e in entries]
    return tuple(tuple(entries[i] if i == j else zero[i] for j in range(dim))
                 for i in range(dim))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    dim = len(x)
    return tuple(
        tuple(sum((x[i][l] * y[l][j] for l in range(1, dim)), x[i][0] * y[0][j])
              for j in range(dim))
        for i in range(dim))


def diag_mul_left(entries, x: Matrix) -> Matrix:
    """diag(entries) @ x by row scaling."""
    return tuple(tuple(e * a for a in row) for e, row in zip(entries, x))


def diag_mul_right(x: Matrix, entries) -> Matrix:
    """x @ diag(entries) by column scaling."""
    return tuple(tuple(a * e for a, e in zip(row, entries)) for row in x)


def mat_add(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def mat_sub(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(rx, ry)) for rx, ry in zip(x, y))


def mat_scale(c, x: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in row) for row in x)


def transpose(x: Matrix) -> Matrix:
    return tuple(zip(*x))


def is_zero_matrix(x: Matrix) -> bool:
    return all(a == 0 for row in x for a in row)


def mat_eq(x: Matrix, y: Matrix) -> bool:
    return is_zero_matrix(mat_sub(x, y))


def span_rank(matrices) -> int:
    """Exact rank of the linear span of the given matrices, flattened to
    vectors; Gaussian elimination with first-nonzero pivoting."""
    rows = [[a for row in m for a in row] for m in matrices]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank
