"""Exact inertia of integer symmetric matrices by rational congruence diagonalization."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _check_symmetric(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(A)
    M = []
    for i, row in enumerate(A):
        if len(row) != n:
            raise ValueError("matrix is not square")
        M.append([Fraction(x) for x in row])
    for i in range(n):
        for j in range(i):
            if M[i][j] != M[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    return M


def inertia(A: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Return (n_plus, n_zero, n_minus) of a symmetric integer (or rational) matrix.

    Diagonal pivots are used whenever the active block has one; otherwise a
    nonzero off-diagonal entry a_ij is folded in by the congruence
    e_i -> e_i + e_j, which makes the new (i, i) entry 2 a_ij nonzero.
    """
    M = _check_symmetric(A)
    n = len(M)
    active = list(range(n))
    plus = minus = 0
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and M[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                M[i][k] += M[j][k]
            for k in range(n):
                M[k][i] += M[k][j]
            piv = i
        p = M[piv][piv]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for i in active:
            f = M[i][piv] / p
            if f:
                for k in active:
                    M[i][k] -= f * M[piv][k]
        for i in active:
            M[i][piv] = M[piv][i] = Fraction(0)
    return plus, n - plus - minus, minus


def signature(A: Sequence[Sequence[int]]) -> int:
    p, _, m = inertia(A)
    return p - m
