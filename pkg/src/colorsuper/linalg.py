"""Exact Gauss-Jordan elimination over any field type with +, -, *, / and truthiness."""

from __future__ import annotations


def rref(rows: list, zero=0):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                fac = A[i][c]
                A[i] = [a - fac * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def nullspace(rows: list, ncols: int, zero=0, one=1) -> list:
    """Basis of the kernel; each vector has a 1 in its free column."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis


def rank(rows: list) -> int:
    return len(rref(rows)[1]) if rows else 0
