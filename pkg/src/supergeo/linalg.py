"""Small exact linear algebra over the rational-function field.

Matrices are tuples of tuples of :class:`RationalFunction`.  Everything is
Gaussian elimination in a field, so results are exact; sizes here never
exceed the chart dimension.
"""

from __future__ import annotations

from .errors import SingularGram
from .scalars import RationalFunction

Matrix = tuple[tuple[RationalFunction, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def identity(n: int, nvars: int) -> Matrix:
    one = RationalFunction.one(nvars)
    zero = RationalFunction.zero(nvars)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = a[i][0] * b[0][j]
            for k in range(1, len(b)):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def mat_vec(a: Matrix, v) -> tuple[RationalFunction, ...]:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def determinant(a: Matrix) -> RationalFunction:
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    nvars = a[0][0].nvars
    rows = [list(r) for r in a]
    det = RationalFunction.one(nvars)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero), None)
        if pivot is None:
            return RationalFunction.zero(nvars)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            if rows[r][col].is_zero:
                continue
            factor = rows[r][col] * inv
            for c in range(col, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def inverse(a: Matrix) -> Matrix:
    """Exact inverse; raises SingularGram when the determinant is zero."""
    n = len(a)
    nvars = a[0][0].nvars
    rows = [list(r) + list(idrow) for r, idrow in zip(a, identity(n, nvars))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero), None)
        if pivot is None:
            raise SingularGram("matrix is singular over the function field")
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [entry * inv for entry in rows[col]]
        for r in range(n):
            if r == col or rows[r][col].is_zero:
                continue
            factor = rows[r][col]
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def solve(a: Matrix, rhs) -> tuple[RationalFunction, ...]:
    """Solve a x = rhs for a single right-hand-side vector."""
    return mat_vec(inverse(a), rhs)
