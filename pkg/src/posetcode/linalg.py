"""Exact Gaussian elimination over GF(q) on lists of element codes."""

from __future__ import annotations

from typing import Sequence

from .gf import FieldSpec


def rref(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns.  The input is not modified."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == len(mat):
            break
        sel = next((i for i in range(row, len(mat)) if mat[i][col]), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = F.inv(mat[row][col])
        mat[row] = [F.mul(inv, x) for x in mat[row]]
        for i in range(len(mat)):
            if i != row and mat[i][col]:
                f = mat[i][col]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
    return mat[:row], pivots


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : rows @ x = 0}, one vector per free column in increasing order.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns, so the result is deterministic.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(F, rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in zip(red, pivots):
            v[pc] = F.neg(r[free])
        basis.append(v)
    return basis


def row_space_equal(F: FieldSpec, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    ra, rb = rank(F, a), rank(F, b)
    return ra == rb == rank(F, list(a) + list(b))
