"""Small exact linear algebra: constant matrices over k and polynomial determinants."""
from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .arith import CoefField, Polynomial


def row_reduce(rows: Sequence[Sequence], field: CoefField) -> tuple:
    """Reduced row echelon form of a constant matrix; returns (rref rows, pivot columns)."""
    m = [list(map(field.convert, r)) for r in rows]
    pivots = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.normalize(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.normalize(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], field: CoefField) -> int:
    if not rows:
        return 0
    return len(row_reduce(rows, field)[1])


def inverse(matrix: Sequence[Sequence], field: CoefField) -> list:
    n = len(matrix)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = row_reduce(aug, field)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def solve(matrix: Sequence[Sequence], rhs: Sequence, field: CoefField) -> list:
    """Solve ``matrix @ x = rhs`` for an invertible square matrix."""
    inv = inverse(matrix, field)
    return [field.normalize(sum(a * b for a, b in zip(row, rhs))) for row in inv]


def det_cofactor(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row, skipping zero entries."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    total = ring.zero()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * det_cofactor(minor)
        total = total - term if j % 2 else total + term
    return total


def det_bareiss(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free Bareiss elimination; every division is exact."""
    m = [list(r) for r in rows]
    n = len(m)
    ring = m[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ring.zero()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def det_leibniz(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Permutation-sum determinant; slow, used only as a cross-check."""
    n = len(rows)
    ring = rows[0][0].ring
    total = ring.zero()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one()
        for i, p in enumerate(perm):
            term = term * rows[i][p]
            if term.is_zero():
                break
        total = total - term if inversions % 2 else total + term
    return total


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n <= 4:
        return det_cofactor(rows)
    return det_bareiss(rows)
