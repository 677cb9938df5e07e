"""Exact symmetric-matrix arithmetic: congruence diagonalisation over Q."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def diagonalize(matrix: Sequence[Sequence[int]]) -> list:
    """Diagonal entries of a matrix congruent to ``matrix`` over the rationals.

    Symmetric Gaussian elimination.  A zero pivot is swapped with a later
    nonzero diagonal entry; if there is none, a row/column with a nonzero
    off-diagonal entry is added to it, making the pivot ``2 a_ij``.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    for row in a:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    diag = []
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is not None:
                    # row_i += row_j, col_i += col_j gives pivot 2 a_ij
                    for k in range(n):
                        a[i][k] += a[j][k]
                    for k in range(n):
                        a[k][i] += a[k][j]
        p = a[i][i]
        diag.append(p)
        if p == 0:
            continue
        for j in range(i + 1, n):
            f = a[j][i] / p
            if f:
                for k in range(i, n):
                    a[j][k] -= f * a[i][k]
        for j in range(i + 1, n):
            a[i][j] = Fraction(0)
        for j in range(i + 1, n):
            a[j][i] = Fraction(0)
    return diag


def inertia(matrix) -> tuple:
    """(positive, negative, zero) counts.

    Integer version of ``diagonalize``: the trailing block is kept as an
    integer matrix that equals the true congruent block up to a factor whose
    sign is tracked in ``s``, and is divided by the gcd of its entries.
    """
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(i)):
        raise ValueError("matrix is not symmetric")
    pos = neg = zero = 0
    s = 1
    while a:
        m = len(a)
        if a[0][0] == 0:
            j = next((j for j in range(1, m) if a[j][j] != 0), None)
            if j is not None:
                a[0], a[j] = a[j], a[0]
                for row in a:
                    row[0], row[j] = row[j], row[0]
            else:
                j = next((j for j in range(1, m) if a[0][j] != 0), None)
                if j is not None:
                    for k in range(m):
                        a[0][k] += a[j][k]
                    for k in range(m):
                        a[k][0] += a[k][j]
        p = a[0][0]
        if p == 0:
            zero += 1
            a = [row[1:] for row in a[1:]]
            continue
        if (p > 0) == (s > 0):
            pos += 1
        else:
            neg += 1
        # Schur complement of the true block is (c / p) * (p a_jk - a_j0 a_0k), sign(c) = s
        b = [[p * a[j][k] - a[j][0] * a[0][k] for k in range(1, m)] for j in range(1, m)]
        g = 0
        for row in b:
            for x in row:
                g = math.gcd(g, x)
        if g > 1:
            b = [[x // g for x in row] for row in b]
        if p < 0:
            s = -s
        a = b
    return pos, neg, zero


def signature(matrix) -> int:
    p, n, _ = inertia(matrix)
    return p - n


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            r = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if r is None:
                return 0
            a[k], a[r] = a[r], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_minors(matrix: Sequence[Sequence[int]]) -> list:
    """Leading principal minors, as Bareiss pivots; stops after the first zero."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    out = []
    prev = 1
    for k in range(n):
        p = a[k][k]
        out.append(p)
        if p == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]) // prev
        prev = p
    return out


def definiteness(matrix) -> str:
    """One of ``positive``, ``negative``, ``indefinite`` or ``zero`` (empty form).

    Sylvester's criterion on the leading minors.  Semidefinite-but-singular
    forms count as indefinite.
    """
    n = len(matrix)
    if n == 0:
        return "zero"
    minors = leading_minors(matrix)
    if len(minors) == n and all(x > 0 for x in minors):
        return "positive"
    if len(minors) == n and all((x > 0) == (k % 2 == 1) and x != 0 for k, x in enumerate(minors)):
        return "negative"
    return "indefinite"
