"""Exact rational linear algebra on tuple-of-tuple matrices.

Everything here works over `fractions.Fraction` so that kernels,
projections and change-of-basis data are computed without rounding.
Matrices are sequences of rows; vectors are flat sequences.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def vec(entries: Sequence) -> Vec:
    return tuple(Fraction(e) for e in entries)


def mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def dot(x: Sequence, y: Sequence) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x: Sequence, y: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Sequence) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in x)


def mat_vec(m: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(dot(row, x) for row in m)


def vec_mat(x: Sequence, m: Sequence[Sequence]) -> Vec:
    n = len(m[0])
    return tuple(sum((x[i] * m[i][j] for i in range(len(x))), Fraction(0)) for j in range(n))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    cols = len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(cols))
        for i in range(len(a))
    )


def transpose(m: Sequence[Sequence]) -> Mat:
    return tuple(tuple(Fraction(m[i][j]) for i in range(len(m))) for j in range(len(m[0])))


def rref(m: Sequence[Sequence]) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [list(vec(r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * e for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def primitive(x: Sequence) -> Vec:
    """Scale a rational vector to coprime integers with positive leading entry."""
    x = vec(x)
    denom_lcm = 1
    for e in x:
        denom_lcm = denom_lcm * e.denominator // gcd(denom_lcm, e.denominator)
    ints = [int(e * denom_lcm) for e in x]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return x
    lead = next(v for v in ints if v != 0)
    sgn = 1 if lead > 0 else -1
    return tuple(Fraction(sgn * v, g) for v in ints)


def nullspace(m: Sequence[Sequence]) -> tuple[Vec, ...]:
    """Deterministic basis of {x : m @ x = 0}, as primitive vectors.

    Free variables are assigned unit values in increasing column order, so
    two calls on equal matrices produce identical bases.
    """
    if not m:
        return ()
    ncols = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -red[r][f]
        basis.append(primitive(x))
    return tuple(basis)


def solve(m: Sequence[Sequence], b: Sequence) -> Vec:
    """Unique solution of m @ x = b; raises for singular/inconsistent systems."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("solve expects a square matrix")
    aug = [list(vec(row)) + [Fraction(b[i])] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise ValueError("singular or inconsistent system")
    return tuple(red[i][n] for i in range(n))


def inverse(m: Sequence[Sequence]) -> Mat:
    n = len(m)
    aug = [list(vec(row)) + list(identity(n)[i]) for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(red[i][n:]) for i in range(n))


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    rows = [list(vec(r)) for r in m]
    n = len(rows)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        piv = rows[c][c]
        result *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return sign * result


def leading_principal_minors(m: Sequence[Sequence]) -> tuple[Fraction, ...]:
    n = len(m)
    return tuple(det([row[: k + 1] for row in m[: k + 1]]) for k in range(n))
