"""Exact nullspaces by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * den) for x in r])
    return out


def row_echelon(rows: Sequence[Sequence[Fraction]]):
    """Bareiss elimination on an integer copy; returns (echelon rows, pivot columns)."""
    m = _integer_rows(rows)
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, n_rows):
            a = m[i][c]
            m[i] = [(piv * m[i][j] - a * m[r][j]) // prev for j in range(n_cols)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(row_echelon(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}; each vector has a 1 in its free coordinate."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    ech, pivots = row_echelon(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((Fraction(ech[r][j]) * v[j] for j in range(c + 1, n_cols) if ech[r][j]), Fraction(0))
            v[c] = -s / ech[r][c]
        basis.append(v)
    return basis
