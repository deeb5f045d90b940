"""Exact scalars and nilpotent jets.

Rationals are :class:`fractions.Fraction`.  :class:`Jet2` adjoins two
commuting infinitesimals with ``e1**2 == e2**2 == 0`` to any commutative
ring of the system, including another :class:`Jet2` ring.  Nesting is
tracked by an explicit ``level`` so that an outer jet never confuses its
infinitesimals with those of its coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


class ConjFieldsError(ArithmeticError):
    """Base class for arithmetic failures raised by this package."""


class NonInvertible(ConjFieldsError):
    """Raised when inverting an element whose constant part vanishes."""


def as_rational(value) -> Fraction:
    """Parse ``value`` (int, Fraction, or ``"p/q"`` string) as a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str, _RationalABC)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def level_of(x) -> int:
    """Nesting depth of a ring element: 0 for plain scalars."""
    return x.level if isinstance(x, Jet2) else 0


class Jet2:
    """``c00 + c10*e1 + c01*e2 + c11*e1*e2`` over a coefficient ring."""

    __slots__ = ("c00", "c10", "c01", "c11", "level")

    def __init__(self, c00=0, c10=0, c01=0, c11=0, level: int | None = None):
        self.c00 = c00
        self.c10 = c10
        self.c01 = c01
        self.c11 = c11
        if level is None:
            level = 1 + max(level_of(c00), level_of(c10), level_of(c01), level_of(c11))
        self.level = level

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        """Return ('jet', other) / ('scalar', other) / None for dispatch."""
        if isinstance(other, Jet2):
            if other.level == self.level:
                return "jet"
            if other.level < self.level:
                return "scalar"
            return None
        if isinstance(other, (int, Fraction)):
            return "scalar"
        return None

    def coefficients(self) -> tuple:
        return (self.c00, self.c10, self.c01, self.c11)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        kind = self._coerce(other)
        if kind == "jet":
            return Jet2(self.c00 + other.c00, self.c10 + other.c10,
                        self.c01 + other.c01, self.c11 + other.c11, self.level)
        if kind == "scalar":
            return Jet2(self.c00 + other, self.c10, self.c01, self.c11, self.level)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.c00, -self.c10, -self.c01, -self.c11, self.level)

    def __sub__(self, other):
        kind = self._coerce(other)
        if kind == "jet":
            return Jet2(self.c00 - other.c00, self.c10 - other.c10,
                        self.c01 - other.c01, self.c11 - other.c11, self.level)
        if kind == "scalar":
            return Jet2(self.c00 - other, self.c10, self.c01, self.c11, self.level)
        return NotImplemented

    def __rsub__(self, other):
        kind = self._coerce(other)
        if kind == "scalar":
            return Jet2(other - self.c00, -self.c10, -self.c01, -self.c11, self.level)
        return NotImplemented

    def __mul__(self, other):
        kind = self._coerce(other)
        if kind == "jet":
            a0, a1, a2, a3 = self.c00, self.c10, self.c01, self.c11
            b0, b1, b2, b3 = other.c00, other.c10, other.c01, other.c11
            # zero-skipping keeps sparsely used nested jets cheap
            c00 = a0 * b0 if (a0 and b0) else 0
            c10 = _dot2(a0, b1, a1, b0)
            c01 = _dot2(a0, b2, a2, b0)
            c11 = _dot2(a0, b3, a3, b0)
            if a1 and b2:
                c11 = c11 + a1 * b2
            if a2 and b1:
                c11 = c11 + a2 * b1
            return Jet2(c00, c10, c01, c11, self.level)
        if kind == "scalar":
            if not other:
                return Jet2(0, 0, 0, 0, self.level)
            return Jet2(_smul(self.c00, other), _smul(self.c10, other),
                        _smul(self.c01, other), _smul(self.c11, other), self.level)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        kind = self._coerce(other)
        if kind == "jet":
            return self * jet_invert(other)
        if kind == "scalar":
            if isinstance(other, Jet2):
                return self * jet_invert(other)
            if other == 0:
                raise NonInvertible("division of a jet by zero")
            inv = Fraction(1) / other
            return self * inv
        return NotImplemented

    def __rtruediv__(self, other):
        kind = self._coerce(other)
        if kind == "scalar":
            return jet_invert(self) * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return jet_invert(self) ** (-k)
        result = Jet2(1, 0, 0, 0, self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparisons -------------------------------------------------------
    def __eq__(self, other):
        kind = self._coerce(other)
        if kind == "jet":
            return (self.c00 == other.c00 and self.c10 == other.c10
                    and self.c01 == other.c01 and self.c11 == other.c11)
        if kind == "scalar":
            return self.c00 == other and not self.c10 and not self.c01 and not self.c11
        if isinstance(other, Jet2):
            return other == self
        return NotImplemented

    def __hash__(self):
        if not (self.c10 or self.c01 or self.c11):
            return hash(self.c00)
        return hash((self.level, self.c00, self.c10, self.c01, self.c11))

    def __bool__(self):
        return bool(self.c00 or self.c10 or self.c01 or self.c11)

    def __repr__(self):
        return f"Jet2({self.c00!r}, {self.c10!r}, {self.c01!r}, {self.c11!r}, level={self.level})"


def _dot2(a, b, c, d):
    """a*b + c*d with zero-skipping."""
    left = a * b if (a and b) else 0
    if c and d:
        return left + c * d if left else c * d
    return left


def _smul(a, s):
    return a * s if a else 0


def jet_lift(x, slot: int, level: int | None = None) -> Jet2:
    """Seed ``x + e_slot`` for differentiation in direction ``slot``."""
    if slot == 1:
        return Jet2(x, 1, 0, 0, level)
    if slot == 2:
        return Jet2(x, 0, 1, 0, level)
    raise ValueError(f"slot must be 1 or 2, got {slot!r}")


def jet_invert(a: Jet2) -> Jet2:
    """Multiplicative inverse; exact, truncating the geometric series."""
    if not a.c00:
        raise NonInvertible("jet with zero constant part is not invertible")
    c00 = a.c00
    if isinstance(c00, Jet2):
        u = jet_invert(c00)
    else:
        u = Fraction(1) / c00
    u2 = u * u
    c10 = -(a.c10 * u2) if a.c10 else 0
    c01 = -(a.c01 * u2) if a.c01 else 0
    c11 = 0
    if a.c10 and a.c01:
        c11 = 2 * a.c10 * a.c01 * u2 * u
    if a.c11:
        c11 = c11 - a.c11 * u2
    return Jet2(u, c10, c01, c11, a.level)


def invert(x):
    """Inverse of any ring element of the system."""
    if isinstance(x, Jet2):
        return jet_invert(x)
    if x == 0:
        raise NonInvertible("zero is not invertible")
    return Fraction(1) / x


def eps1_part(x):
    """Coefficient of e1 (zero for plain scalars)."""
    return x.c10 if isinstance(x, Jet2) else 0


def eps2_part(x):
    return x.c01 if isinstance(x, Jet2) else 0


def mixed_part(x):
    """Coefficient of e1*e2 (zero for plain scalars)."""
    return x.c11 if isinstance(x, Jet2) else 0
