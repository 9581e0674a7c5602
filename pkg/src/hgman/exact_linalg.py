"""Exact linear algebra over the rationals.

Dense Gauss-Jordan inversion, Bareiss fraction-free determinant/rank,
congruence diagonalization for signatures, and a sparse fraction-free
row echelon used for the large constraint systems.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "SingularMatrixError",
    "inverse",
    "bareiss",
    "signature",
    "SparseEchelon",
]


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible is not."""


def inverse(m) -> np.ndarray:
    """Exact inverse of a square matrix with rational entries."""
    a = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object)]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = aug[i][n + j]
    return out


def _to_integer_rows(m) -> list[list[int]]:
    rows = []
    for row in np.asarray(m, dtype=object):
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return rows


def bareiss(m) -> tuple[int, int]:
    """Fraction-free Bareiss elimination.

    Returns ``(rank, last_pivot)``.  Rows are scaled to integers first (this
    does not change the rank).  For a square full-rank integer matrix the
    last pivot is the determinant up to the sign of the row swaps.
    """
    a = _to_integer_rows(m)
    if not a:
        return 0, 1
    nrows, ncols = len(a), len(a[0])
    prev = 1
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            arc = a[r][col]
            a[r] = [(p * a[r][c] - arc * a[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        col += 1
    return rank, prev


def signature(m) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix.

    Uses symmetric congruence elimination (Lagrange's method): a zero
    diagonal pivot with a nonzero off-diagonal entry is repaired by adding
    the partner row/column first.
    """
    a = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object)]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = zero = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and a[i][j] != 0),
                None,
            )
            if pair is None:
                zero += len(active)
                break
            i, j = pair
            # row_i += row_j, col_i += col_j: new a_ii = 2 a_ij != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            k = i
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for r in active:
            f = a[r][k] / d
            if f:
                for c in range(n):
                    a[r][c] -= f * a[k][c]
        for r in active:
            a[r][k] = a[k][r] = Fraction(0)
    return pos, neg, zero


class SparseEchelon:
    """Incremental fraction-free row echelon form over the integers.

    Rows are ``{column: int}`` maps.  Each incoming row is reduced against
    the stored pivots by ``row <- p*row - a*pivot_row`` followed by division
    by the content gcd, so coefficients stay integral and small.  The number
    of stored pivots is the rank.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def nullity(self) -> int:
        return self.ncols - self.rank

    def add_row(self, row: Mapping[int, int] | Iterable[tuple[int, int]]) -> bool:
        """Insert a row; returns True if it increased the rank."""
        items = row.items() if isinstance(row, Mapping) else row
        r: dict[int, int] = {}
        for c, v in items:
            if not 0 <= c < self.ncols:
                raise IndexError(f"column {c} out of range")
            v = r.get(c, 0) + int(v)
            if v:
                r[c] = v
            else:
                r.pop(c, None)
        while r:
            lead = min(r)
            pr = self.pivots.get(lead)
            if pr is None:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                if r[lead] < 0:
                    g = -g
                self.pivots[lead] = {c: v // g for c, v in r.items()}
                return True
            p, a = pr[lead], r[lead]
            new = {c: p * v for c, v in r.items()}
            for c, v in pr.items():
                x = new.get(c, 0) - a * v
                if x:
                    new[c] = x
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            r = {c: v // g for c, v in new.items()} if g > 1 else new
        return False

    def nullspace(self) -> list[dict[int, Fraction]]:
        """Basis of the solution space of the stored homogeneous system."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            x: dict[int, Fraction] = {f: Fraction(1)}
            for lead in order:
                row = self.pivots[lead]
                s = sum((Fraction(v) * x.get(c, 0) for c, v in row.items() if c != lead), Fraction(0))
                if s:
                    x[lead] = -s / row[lead]
            basis.append(x)
        return basis
