"""Exact linear algebra over the rationals.

Small dense routines on lists of lists of Fraction; everything here is
plain Gauss elimination with exact pivots, no scaling heuristics needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def mat(rows: Sequence[Sequence]) -> Matrix:
    """Copy input into a fresh Fraction matrix."""
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for p in range(k):
            aip = a[i][p]
            if aip:
                row = b[p]
                oi = out[i]
                for j in range(m):
                    oi[j] += aip * row[j]
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def row_echelon(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [row[:] for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(row_echelon(m)[1])


def solve(a: Matrix, b: Vector) -> Optional[tuple[Vector, int]]:
    """Solve a x = b.

    Returns (solution, nullity) with free variables set to zero, or None
    when the system is inconsistent.  The solution is deterministic: pivot
    columns are chosen left to right.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    ech, pivots = row_echelon(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = ech[r][cols]
    return x, cols - len(pivots)


def invert(m: Matrix) -> Optional[Matrix]:
    """Two-sided inverse, or None when the matrix is singular."""
    n = len(m)
    aug = [m[i][:] + identity(n)[i] for i in range(n)]
    ech, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in ech]
