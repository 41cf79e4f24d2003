"""Exact Gaussian elimination over any field whose elements support + - * / and bool().

Used with Fraction entries (rational constraint systems) and with
CycloScalar entries (root-of-unity evaluation matrices).
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple


def rref(rows: Sequence[Sequence], ncols: int) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c] if not isinstance(M[r][c], int) else Fraction(1, M[r][c])
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, one=Fraction(1), zero=Fraction(0)) -> List[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column, in column order."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list | None:
    """One solution of rows @ x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def span_contains(basis: Sequence[Sequence], vectors: Sequence[Sequence], ncols: int) -> bool:
    """Every vector lies in the span of ``basis``."""
    r = rank(basis, ncols)
    return rank(list(basis) + list(vectors), ncols) == r
