"""Square matrices over the commutative rings of :mod:`conjfields.exact_core`."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact_core import NonInvertible, invert, level_of

MAX_DIM = 8


class DimensionMismatch(ValueError):
    pass


class SquareMatrix:
    """Immutable ``n x n`` matrix; entries may be ints, Fractions or jets."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n < 1 or n > MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {n}")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix rows must all have length n")
        self.n = n
        self.rows = rows

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "SquareMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, c=1) -> "SquareMatrix":
        """``c * E_ij`` (zero-based indices)."""
        return cls([[c if (r, s) == (i, j) else 0 for s in range(n)] for r in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "SquareMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_rationals(cls, rows) -> "SquareMatrix":
        return cls([[Fraction(x) for x in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, fn: Callable) -> "SquareMatrix":
        return SquareMatrix([[fn(x) for x in r] for r in self.rows])

    def ring_level(self) -> int:
        return max(level_of(x) for r in self.rows for x in r)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "SquareMatrix"):
        if other.n != self.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")

    def __add__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return SquareMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            self._check(other)
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = 0
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return SquareMatrix(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "SquareMatrix":
        return SquareMatrix([[c * a if a else 0 for a in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __repr__(self):
        return f"SquareMatrix({[list(r) for r in self.rows]!r})"

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "]"

    def to_json(self):
        return [[str(a) for a in r] for r in self.rows]

    # -- algebra -----------------------------------------------------------
    def trace(self):
        acc = 0
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        if self.n == 1:
            return self.rows[0][0]
        if self.n == 2:
            (a, b), (c, d) = self.rows
            return a * d - b * c
        coeffs, _ = _faddeev_leverrier(self)
        # char poly  lambda^n + c1 lambda^{n-1} + ... + cn ;  det = (-1)^n cn
        return coeffs[-1] if self.n % 2 == 0 else -coeffs[-1]

    def adjugate(self) -> "SquareMatrix":
        if self.n == 1:
            return SquareMatrix([[1]])
        if self.n == 2:
            (a, b), (c, d) = self.rows
            return SquareMatrix([[d, -b], [-c, a]])
        coeffs, adj = _faddeev_leverrier(self)
        return adj

    def inverse(self) -> "SquareMatrix":
        return inverse_adjugate(self)

    def power(self, k: int) -> "SquareMatrix":
        return power(self, k)

    def commutator(self, other: "SquareMatrix") -> "SquareMatrix":
        return self * other - other * self

    def anticommutator(self, other: "SquareMatrix") -> "SquareMatrix":
        """Normalized anticommutator ``(ab + ba)/2``."""
        return (self * other + other * self).scale(Fraction(1, 2))


def _faddeev_leverrier(a: SquareMatrix):
    """Characteristic coefficients and adjugate; divides only by integers."""
    n = a.n
    ident = SquareMatrix.identity(n)
    m = SquareMatrix.zero(n)
    coeffs = []
    c = 1
    prev = None
    for k in range(1, n + 1):
        prev = m + ident.scale(c)  # M_k = A M_{k-1} + c_{k-1} I
        m = a * prev
        c = m.trace() * Fraction(-1, k)
        coeffs.append(c)
    # adj(A) = (-1)^{n-1} M_n-before-multiplication
    adj = prev if n % 2 == 1 else -prev
    return coeffs, adj


def inverse_adjugate(g: SquareMatrix) -> SquareMatrix:
    """``adj(g)/det(g)``; works verbatim over jet rings."""
    det = g.det()
    try:
        inv_det = invert(det)
    except (NonInvertible, ZeroDivisionError) as exc:
        raise NonInvertible(f"determinant {det} is not invertible") from exc
    return g.adjugate().scale(inv_det)


def power(g: SquareMatrix, k: int) -> SquareMatrix:
    """Exact ``g**k`` for any integer k, by repeated squaring."""
    if k < 0:
        return power(inverse_adjugate(g), -k)
    result = SquareMatrix.identity(g.n)
    base = g
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def trace(g: SquareMatrix):
    return g.trace()


class PowerCache:
    """Memoized integer powers of one matrix (shares the inverse)."""

    def __init__(self, g: SquareMatrix):
        self.g = g
        self._pos = {0: SquareMatrix.identity(g.n), 1: g}
        self._neg = {0: self._pos[0]}
        self._inv = None
        self._traces = {}

    def inverse(self) -> SquareMatrix:
        if self._inv is None:
            self._inv = inverse_adjugate(self.g)
            self._neg[1] = self._inv
        return self._inv

    def __call__(self, k: int) -> SquareMatrix:
        table, base = (self._pos, self.g) if k >= 0 else (self._neg, None)
        if k < 0:
            base = self.inverse()
        m = abs(k)
        if m in table:
            return table[m]
        top = max(table)
        cur = table[top]
        for j in range(top + 1, m + 1):
            cur = cur * base
            table[j] = cur
        return table[m]

    def trace(self, k: int):
        if k not in self._traces:
            self._traces[k] = self(k).trace()
        return self._traces[k]
