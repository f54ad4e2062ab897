"""Small exact linear algebra over the rationals (rows are sequences)."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Vector = tuple[Fraction, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def rref(rows: Sequence[Sequence], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _integer_rank(m: list[list[int]], width: int) -> int:
    # Fraction-free (Bareiss) elimination; every intermediate stays integral.
    r = 0
    prev = 1
    for c in range(width):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            m[i] = [(p * x - a * y) // prev for x, y in zip(m[i], m[r])]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def rank(rows: Sequence[Sequence], width: int) -> int:
    if not rows:
        return 0
    if all(Fraction(x).denominator == 1 for row in rows for x in row):
        return _integer_rank([[int(x) for x in row] for row in rows], width)
    return len(rref(rows, width)[1])


def nullspace(rows: Sequence[Sequence], width: int) -> list[Vector]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    reduced, pivots = rref(rows, width) if rows else ([], [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def primitive(v: Sequence) -> tuple[int, ...]:
    """The positive multiple of a rational vector with coprime integer entries."""
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    return rank(diffs, len(base))
