"""Fraction-free exact linear algebra over integral domains.

Ring elements need +, -, *, truthiness, and an exact division callable.
"""
from __future__ import annotations

from typing import Callable, List, Sequence, Tuple

from .exactfield import Cyclotomic
from .laurent import LPoly


def _divexact(a, b):
    if isinstance(a, LPoly):
        return a.divexact(b)
    return a / b


def bareiss_det(matrix: Sequence[Sequence], one, divexact: Callable = _divexact):
    """Determinant by Bareiss elimination; `one` is the ring identity."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return one - one
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                val = pk * m[i][j]
                if mik and m[k][j]:
                    val = val - mik * m[k][j]
                m[i][j] = divexact(val, prev) if val else val
            m[i][k] = one - one
        prev = pk
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def pivot_columns(matrix: Sequence[Sequence], one, divexact: Callable = _divexact) -> List[int]:
    """Indices of pivot columns of a fraction-free row echelon form.

    These are the lexicographically first maximal independent set of columns.
    """
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    prev = one
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pk = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            for j in range(c + 1, cols):
                val = pk * m[i][j]
                if mic and m[r][j]:
                    val = val - mic * m[r][j]
                m[i][j] = divexact(val, prev) if val else val
            m[i][c] = one - one
        prev = pk
        pivots.append(c)
        r += 1
    return pivots


def rank(matrix: Sequence[Sequence], one, divexact: Callable = _divexact) -> int:
    return len(pivot_columns(matrix, one, divexact))


def field_pivot_columns(matrix: Sequence[Sequence[Cyclotomic]]) -> List[int]:
    """Gaussian elimination over Q(zeta); same pivots as pivot_columns."""
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv if v else v for v in m[r]]
        for i in range(r + 1, rows):
            f = m[i][c]
            if f:
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return pivots


def transpose(matrix: Sequence[Sequence]) -> List[list]:
    return [list(col) for col in zip(*matrix)] if matrix else []


def leibniz_det(matrix: Sequence[Sequence], one):
    """Permutation expansion; only for small cross-checks."""
    from itertools import permutations

    n = len(matrix)
    total = one - one
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if not term:
                break
        if term:
            total = total - term if inversions % 2 else total + term
    return total


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant (Bareiss with integer exact division)."""
    return bareiss_det(matrix, 1, lambda a, b: a // b)


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
                 for i in range(len(a)))


def int_matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def int_identity(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def int_inverse(a: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Inverse of a unimodular integer matrix; ValueError otherwise."""
    from fractions import Fraction

    n = len(a)
    d = int_det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {d})")
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c])
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [v * inv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(int(v) for v in row[n:]) for row in m)
