"""Exact dense linear algebra over the rationals, plus a ring-generic determinant."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import as_rational


def to_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[as_rational(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows or not ncols:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` or ``None`` if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = m[r][ncols]
    return x


def det(matrix: Sequence[Sequence], zero=None, one=None):
    """Determinant over any commutative ring by memoized Laplace expansion.

    Works for Fractions, :class:`MPoly` or :class:`BiForm` entries; ``zero``
    and ``one`` default to rational 0 and 1. Cost is ``O(n 2^n)`` ring products.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if zero is None:
        zero = Fraction(0)
    if one is None:
        one = Fraction(1)
    if n == 0:
        return one
    memo: dict[tuple, object] = {}

    def minor(cols: tuple):
        # expansion along row n - len(cols), restricted to the given columns
        if not cols:
            return one
        if cols in memo:
            return memo[cols]
        row = matrix[n - len(cols)]
        total = zero
        for pos, c in enumerate(cols):
            entry = row[c]
            if _is_zero(entry):
                continue
            sub = minor(cols[:pos] + cols[pos + 1:])
            if _is_zero(sub):
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return not x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((as_rational(x) * as_rational(y) for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m]


def random_invertible(n: int, rng, bound: int = 3) -> list[list[Fraction]]:
    """Random small-integer invertible matrix drawn from ``rng`` (a ``random.Random``)."""
    while True:
        m = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if det(m):
            return m


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_zero_matrix(m: Sequence[Sequence]) -> bool:
    return all(not x for row in m for x in row)

