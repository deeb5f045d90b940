"""Invariant vector fields on C* as Laurent polynomials, and their bracket."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .class_algebra import laurent_add, laurent_clean, laurent_mul


@dataclass(frozen=True)
class CircleField:
    """The field of the map ``x -> sum_n c_n x^n``; stored as sorted (n, c_n)."""

    coeffs: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, Fraction]) -> "CircleField":
        return cls(tuple(sorted(laurent_clean(d).items())))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, other: "CircleField") -> "CircleField":
        return CircleField.from_dict(laurent_add(self.as_dict(), other.as_dict()))

    def __sub__(self, other: "CircleField") -> "CircleField":
        return CircleField.from_dict(laurent_add(self.as_dict(), other.as_dict(), -1))

    def scale(self, c) -> "CircleField":
        return CircleField.from_dict({k: v * c for k, v in self.coeffs})

    def __rmul__(self, c):
        return self.scale(c)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def derivative(self) -> dict:
        return laurent_clean({k - 1: v * k for k, v in self.coeffs})

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*f({k})" for k, c in self.coeffs)

    def __repr__(self):
        return f"CircleField({self.format()})"


X = {1: Fraction(1)}


def monomial_field(n: int) -> CircleField:
    return CircleField.from_dict({n: Fraction(1)})


def odd_field(n: int) -> CircleField:
    """``x^n - x^-n``, antisymmetric under n -> -n; zero for n = 0."""
    return monomial_field(n) - monomial_field(-n)


def even_field(n: int) -> CircleField:
    """``x^n + x^-n``, symmetric under n -> -n."""
    return monomial_field(n) + monomial_field(-n)


def circle_commutator(a: CircleField, b: CircleField) -> CircleField:
    """``(db)(x a) - (da)(x b)`` from the derivative definition."""
    first = laurent_mul(b.derivative(), laurent_mul(X, a.as_dict()))
    second = laurent_mul(a.derivative(), laurent_mul(X, b.as_dict()))
    return CircleField.from_dict(laurent_add(first, second, -1))


def expand_in(field: CircleField, family: str) -> dict | None:
    """Coefficients in the odd family (n >= 1) or the even family (n >= 0, where the even field at 0 is 2x^0), else None."""
    d = field.as_dict()
    out: dict = {}
    if family == "k":
        if d.get(0):
            return None
        for n, c in d.items():
            if n > 0:
                if d.get(-n, 0) != -c:
                    return None
                out[n] = c
            elif -n not in d:
                return None
    elif family == "p":
        for n, c in d.items():
            if n > 0:
                if d.get(-n, 0) != c:
                    return None
                out[n] = c
            elif n == 0:
                out[0] = c / 2
            elif -n not in d:
                return None
    else:
        raise ValueError(f"unknown family {family!r}")
    return dict(sorted(out.items()))


# closed forms as printed, plus the forms the definitional bracket produces

def closed_f(n: int, m: int) -> CircleField:
    return monomial_field(n + m).scale(m - n)


def printed_kk(n: int, m: int) -> CircleField:
    return odd_field(n + m).scale(m - n) - odd_field(m - n).scale(n + m)


def printed_pp(n: int, m: int) -> CircleField:
    return odd_field(n + m).scale(n - m) + odd_field(n - m).scale(n + m)


def printed_pk(n: int, m: int) -> CircleField:
    return even_field(n + m).scale(n - m) - even_field(n - m).scale(n + m)


def computed_pp(n: int, m: int) -> CircleField:
    return odd_field(n + m).scale(m - n) + odd_field(m - n).scale(n + m)


def computed_pk(n: int, m: int) -> CircleField:
    return even_field(n + m).scale(m - n) + even_field(n - m).scale(n + m)


def k_structure_table(max_index: int) -> dict:
    """``{(n, m): {j: c}}`` where [odd(n), odd(m)] = sum_j c odd(j), for 1 <= n < m <= max_index."""
    table = {}
    for n in range(1, max_index + 1):
        for m in range(n + 1, max_index + 1):
            table[(n, m)] = expand_in(circle_commutator(odd_field(n), odd_field(m)), "k")
    return table
