"""Integer matrix normal forms: Hermite (row style), Smith, and integer kernels.

Matrices are lists of rows of Python ints; nothing here touches floats.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ rows == H``.  The nonzero
    rows of ``H`` come first, have strictly increasing pivot columns, positive
    pivots, and entries above each pivot reduced into ``[0, pivot)``.
    """
    H = [list(r) for r in rows]
    for r in H:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
    m = len(H)
    U = identity(m)
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= m:
            break
        # Euclid down the column until a single nonzero entry remains.
        while True:
            nonzero = [i for i in range(pivot_row, m) if H[i][col] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: abs(H[i][col]))
            H[pivot_row], H[best] = H[best], H[pivot_row]
            U[pivot_row], U[best] = U[best], U[pivot_row]
            done = True
            for i in range(pivot_row + 1, m):
                if H[i][col] != 0:
                    q = H[i][col] // H[pivot_row][col]
                    H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
                    if H[i][col] != 0:
                        done = False
            if done:
                break
        if all(H[i][col] == 0 for i in range(pivot_row, m)):
            continue
        if H[pivot_row][col] < 0:
            H[pivot_row] = [-a for a in H[pivot_row]]
            U[pivot_row] = [-a for a in U[pivot_row]]
        p = H[pivot_row][col]
        for i in range(pivot_row):
            q = H[i][col] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
        pivot_row += 1
    return H, U


def hnf(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Nonzero rows of the row Hermite normal form (a canonical lattice basis)."""
    H, _ = hnf_with_transform(rows, ncols)
    return [r for r in H if any(r)]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of the lattice ``{x in Z^ncols : M x = 0}``."""
    if not M:
        return identity(ncols)
    A = transpose(M)  # ncols rows, one per unknown
    H, U = hnf_with_transform(A, len(M))
    return [U[i] for i in range(ncols) if not any(H[i])]


def reduce_by_hnf(v: Sequence[int], basis: Sequence[Sequence[int]]) -> List[int]:
    """Reduce ``v`` against an HNF basis; the result is zero iff ``v`` lies in the lattice."""
    v = list(v)
    for row in basis:
        col = next(j for j, a in enumerate(row) if a)
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    return not any(reduce_by_hnf(v, basis))


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U A V = D``.

    ``U`` (rows x rows) and ``V`` (ncols x ncols) are unimodular, ``D`` is
    diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    D = [list(r) for r in A]
    m = len(D)
    n = ncols
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in D:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, q)
                    if D[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, q)
                    if D[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # Divisibility: pivot must divide the whole remaining block.
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            D[t] = [a + b for a, b in zip(D[t], D[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def invariant_factors(A: Sequence[Sequence[int]], ncols: int) -> List[int]:
    """Nonzero diagonal entries of the Smith form of ``A``."""
    _, D, _ = smith_normal_form(A, ncols)
    return [D[i][i] for i in range(min(len(D), ncols)) if D[i][i]]


def unimodular_inverse(V: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(V)
    H, U = hnf_with_transform(V, n)
    # H is upper triangular with unit diagonal (det = +-1); back-substitute.
    if any(H[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    # Clear above-diagonal entries of H while tracking U, giving U' V = I.
    for col in range(n - 1, -1, -1):
        for i in range(col):
            q = H[i][col]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[col])]
                U[i] = [a - q * b for a, b in zip(U[i], U[col])]
    return U
