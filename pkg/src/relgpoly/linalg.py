"""Exact rational linear algebra.

Everything here runs over Python integers and :class:`fractions.Fraction`.
Rank computations use fraction-free (Bareiss) elimination on row-scaled
integer copies of the input, so intermediate entries stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float coordinate {x!r}")
    return Fraction(x)


class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        entries = tuple(tuple(to_fraction(x) for x in row) for row in entries)
        if cols is None:
            if not entries:
                raise ValueError("cols must be given for a matrix without rows")
            cols = len(entries[0])
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.entries = entries
        self.rows = len(entries)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * x for a, x in zip(row, vec) if a and x), Fraction(0))
                     for row in self.entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.entries), cols=self.rows) if self.rows else \
            RationalMatrix([[] for _ in range(self.cols)], cols=0)

    def to_text(self) -> str:
        """One row per line, entries as exact ``p/q`` strings."""
        lines = [f"# {self.rows} x {self.cols}"]
        for row in self.entries:
            lines.append(" ".join(str(x) for x in row))
        return "\n".join(lines)


def _as_entries(M) -> tuple[list[list[Fraction]], int]:
    if isinstance(M, RationalMatrix):
        return [list(r) for r in M.entries], M.cols
    rows = [[to_fraction(x) for x in r] for r in M]
    return rows, (len(rows[0]) if rows else 0)


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank and kernel unchanged)."""
    out = []
    for row in rows:
        m = 1
        for x in row:
            if x:
                m = lcm(m, x.denominator)
        out.append([int(x * m) for x in row])
    return out


def bareiss_echelon(A: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    ``A`` is modified in place. Returns the echelon rows (nonzero rows only)
    and the pivot column of each.
    """
    m = len(A)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == m:
            break
        best = None
        for i in range(r, m):
            v = A[i][c]
            if v and (best is None or abs(v) < abs(A[best][c])):
                best = i
                if abs(v) == 1:
                    break
        if best is None:
            continue
        if best != r:
            A[r], A[best] = A[best], A[r]
        prow = A[r]
        piv = prow[c]
        tail = range(c + 1, ncols)
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                for j in tail:
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            elif piv != prev:
                for j in tail:
                    if row[j]:
                        row[j] = piv * row[j] // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M) -> int:
    rows, ncols = _as_entries(M)
    if not rows or not ncols:
        return 0
    _, pivots = bareiss_echelon(integer_rows(rows), ncols)
    return len(pivots)


def kernel_dim(M) -> int:
    """Dimension of the right null space: ``cols - rank``."""
    rows, ncols = _as_entries(M)
    if isinstance(M, RationalMatrix):
        ncols = M.cols
    return ncols - rank(rows) if rows else ncols


def kernel_basis(M) -> list[tuple[int, ...]]:
    """Basis of the right null space as primitive integer vectors.

    One vector per free column; the free coordinate is positive.
    """
    rows, ncols = _as_entries(M)
    if isinstance(M, RationalMatrix):
        ncols = M.cols
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    ech, pivots = bareiss_echelon(integer_rows(rows), ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = ech[r]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append(_primitive(x))
    return basis


def _primitive(x: Sequence[Fraction]) -> tuple[int, ...]:
    m = 1
    for v in x:
        m = lcm(m, v.denominator)
    ints = [int(v * m) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def determinant(M) -> Fraction:
    rows, n = _as_entries(M)
    if len(rows) != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    ints = []
    for row in rows:
        m = 1
        for x in row:
            if x:
                m = lcm(m, x.denominator)
        scale /= m
        ints.append([int(x * m) for x in row])
    return scale * _int_det(ints)


def _int_det(A: list[list[int]]) -> int:
    n = len(A)
    A = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = A[k]
        for i in range(k + 1, n):
            row = A[i]
            for j in range(k + 1, n):
                row[j] = (pk[k] * row[j] - row[k] * pk[j]) // prev
        prev = pk[k]
    return sign * A[n - 1][n - 1]


def affine_hull_projection(points: Sequence[Sequence[Fraction]]) -> tuple[int, list[int]]:
    """Affine dimension of ``points`` and a set of coordinate axes on which
    the projection restricted to the affine hull is injective."""
    if not points:
        return -1, []
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs or not diffs[0]:
        return 0, []
    _, pivots = bareiss_echelon(integer_rows(diffs), len(base))
    return len(pivots), pivots
