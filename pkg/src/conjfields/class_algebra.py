"""Canonical forms for class functions and N-invariants on SL(2).

Operator outputs are only evaluable, so canonical forms are recovered by
exact interpolation: on the torus ``diag(x, 1/x)`` for class functions, on
the Borel slice ``[[x, b], [0, 1/x]]`` for ``beta**n * p(tr)``.  Every
reconstruction is certified by residual nodes and by spot checks at
generic SL(2,Q) points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .exact_core import ConjFieldsError
from .functions import RegularFunction
from .matrix_ring import PowerCache, SquareMatrix
from .sampling import SamplePlan, borel_grid, interpolation_nodes, slg_element, torus_point

BASES = ("I", "J", "chi")
CHECK_PLAN = SamplePlan(seed=20260101, count=2, height_bound=3)


class DegreeOverflow(ConjFieldsError):
    """The interpolant failed a residual node: the degree bound is too small."""

    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


class NotSymmetric(ConjFieldsError):
    """Torus restriction is not invariant under x <-> 1/x."""


class NotInvariant(NotSymmetric):
    """Reconstruction disagrees with the function at a generic point."""


class WeightMismatch(ConjFieldsError):
    pass


# ---------------------------------------------------------------------------
# exact interpolation
# ---------------------------------------------------------------------------


def interpolate(nodes: Sequence[Fraction], values: Sequence) -> list[Fraction]:
    """Ascending coefficients of the polynomial through (nodes, values)."""
    n = len(nodes)
    if len(values) != n:
        raise ValueError("nodes and values differ in length")
    dd = [Fraction(v) for v in values]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - j])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (t - node_i) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - nodes[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    return coeffs


def poly_eval(coeffs: Sequence, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# Laurent polynomials as {exponent: coefficient}
# ---------------------------------------------------------------------------


def laurent_clean(d: Mapping[int, Fraction]) -> dict:
    return {k: Fraction(v) for k, v in d.items() if v}


def laurent_add(a: Mapping, b: Mapping, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return laurent_clean(out)


def laurent_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for i, u in a.items():
        for j, v in b.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return laurent_clean(out)


def _basis_laurent(basis: str, m: int) -> dict:
    """Torus restriction of the m-th basis element (m = 0 is the constant 1)."""
    if m == 0:
        return {0: Fraction(1)}
    if basis == "I":
        return {m: Fraction(1), -m: Fraction(1)}
    if basis == "J":
        return laurent_clean({m - 2 * i: Fraction(comb(m, i)) for i in range(m + 1)})
    if basis == "chi":
        return {m - 2 * i: Fraction(1) for i in range(m + 1)}
    raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassForm:
    """A class function on SL(2) as a symmetric Laurent polynomial in x."""

    laurent: tuple  # sorted ((exponent, coefficient), ...)

    def __post_init__(self):
        d = dict(self.laurent)
        if any(d.get(-k, 0) != v for k, v in d.items()):
            raise NotSymmetric(f"Laurent polynomial {d} is not x <-> 1/x symmetric")

    @classmethod
    def from_laurent(cls, d: Mapping[int, Fraction]) -> "ClassForm":
        return cls(tuple(sorted(laurent_clean(d).items())))

    @classmethod
    def from_basis(cls, basis: str, coeffs: Mapping[int, Fraction]) -> "ClassForm":
        acc: dict = {}
        for m, c in coeffs.items():
            if m < 0:
                raise ValueError("basis indices must be nonnegative")
            acc = laurent_add(acc, _basis_laurent(basis, m), c)
        return cls.from_laurent(acc)

    def as_dict(self) -> dict:
        return dict(self.laurent)

    @property
    def degree(self) -> int:
        return max((k for k, _ in self.laurent), default=0)

    def to_basis(self, basis: str) -> dict:
        """Coefficients ``{m: c}``; index 0 stands for the constant function 1."""
        rest = self.as_dict()
        out: dict = {}
        while rest:
            top = max(rest)
            if top == 0:
                out[0] = rest[0]
                break
            c = rest[top]
            out[top] = c
            rest = laurent_add(rest, _basis_laurent(basis, top), -c)
        return dict(sorted(out.items()))

    def __add__(self, other: "ClassForm") -> "ClassForm":
        return ClassForm.from_laurent(laurent_add(self.as_dict(), other.as_dict()))

    def __sub__(self, other: "ClassForm") -> "ClassForm":
        return ClassForm.from_laurent(laurent_add(self.as_dict(), other.as_dict(), -1))

    def __mul__(self, other):
        if isinstance(other, ClassForm):
            return ClassForm.from_laurent(laurent_mul(self.as_dict(), other.as_dict()))
        return ClassForm.from_laurent({k: v * other for k, v in self.laurent})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.laurent

    def evaluate(self, g: SquareMatrix):
        pc = PowerCache(g)
        acc = 0
        for k, v in self.laurent:
            if k > 0:
                acc = acc + pc.trace(k) * v
            elif k == 0:
                acc = acc + v
        return acc

    def to_json(self, basis: str = "I") -> dict:
        return {"basis": basis,
                "coefficients": {str(m): str(c) for m, c in self.to_basis(basis).items()}}

    def format(self, basis: str = "I") -> str:
        name = {"I": "I", "J": "J", "chi": "chi"}[basis]
        terms = []
        for m, c in sorted(self.to_basis(basis).items(), reverse=True):
            atom = "" if m == 0 else f"{name}({m})"
            terms.append((c, atom))
        return format_terms(terms)


def format_terms(terms) -> str:
    """Render [(coefficient, atom)] as ``2*I(3) - 2*I(1)``; empty is ``0``."""
    out = ""
    for c, atom in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if atom:
            body = atom if a == 1 else f"{a}*{atom}"
        else:
            body = str(a)
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out or "0"


@dataclass(frozen=True)
class BorelForm:
    """``beta**weight * p(tr)`` with p given by ascending coefficients."""

    weight: int
    poly: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "poly", _trim(Fraction(c) for c in self.poly))

    @classmethod
    def from_dict(cls, weight: int, coeffs: Mapping[int, Fraction]) -> "BorelForm":
        if not coeffs:
            return cls(weight, ())
        top = max(coeffs)
        if min(coeffs) < 0:
            raise ValueError("tr exponents must be nonnegative")
        return cls(weight, tuple(Fraction(coeffs.get(i, 0)) for i in range(top + 1)))

    def as_dict(self) -> dict:
        return {i: c for i, c in enumerate(self.poly) if c}

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def leading(self) -> Fraction:
        return self.poly[-1] if self.poly else Fraction(0)

    def is_zero(self) -> bool:
        return not self.poly

    def __add__(self, other: "BorelForm") -> "BorelForm":
        if other.weight != self.weight and not (self.is_zero() or other.is_zero()):
            raise WeightMismatch("cannot add BorelForms of different weight")
        d = self.as_dict()
        for k, v in other.as_dict().items():
            d[k] = d.get(k, 0) + v
        return BorelForm.from_dict(self.weight if self.poly else other.weight,
                                   {k: v for k, v in d.items() if v})

    def __sub__(self, other: "BorelForm") -> "BorelForm":
        return self + other.scale(-1)

    def scale(self, c) -> "BorelForm":
        return BorelForm(self.weight, tuple(x * c for x in self.poly))

    def evaluate(self, g: SquareMatrix):
        b = g[0, 1]
        acc = poly_eval(self.poly, g.trace())
        for _ in range(self.weight):
            acc = acc * b
        return acc

    def to_json(self) -> dict:
        return {"basis": "beta^n*J", "weight": self.weight,
                "coefficients": {str(i): str(c) for i, c in self.as_dict().items()}}

    def format(self) -> str:
        inner = format_terms((c, f"J({i})" if i else "")
                             for i, c in sorted(self.as_dict().items(), reverse=True))
        if inner == "0" or self.weight == 0:
            return inner
        prefix = "beta" if self.weight == 1 else f"beta^{self.weight}"
        if len(self.as_dict()) == 1 and 0 in self.as_dict():
            return format_terms([(self.poly[0], prefix)])
        return f"{prefix}*({inner})"


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------


def restrict_to_torus(f: RegularFunction, degree_bound: int, check_points: int = 2) -> ClassForm:
    """Exact Laurent restriction of a class function to ``diag(x, 1/x)``."""
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    width = 2 * degree_bound + 1
    nodes = interpolation_nodes(width + 2)
    shift = [x ** degree_bound for x in nodes]
    values = [f(torus_point(x)) * s for x, s in zip(nodes, shift)]
    coeffs = interpolate(nodes[:width], values[:width])
    for x, v in zip(nodes[width:], values[width:]):
        if poly_eval(coeffs, x) != v:
            raise DegreeOverflow(
                f"torus restriction exceeds Laurent degree {degree_bound}", degree_bound)
    d = {k - degree_bound: c for k, c in enumerate(coeffs) if c}
    form = ClassForm.from_laurent(d)
    for i in range(check_points):
        g = slg_element(CHECK_PLAN, 2, i)
        if form.evaluate(g) != f(g):
            raise NotInvariant(f"function is not a class function (disagrees at {g})")
    return form


def to_basis(c: ClassForm, basis: str) -> dict:
    return c.to_basis(basis)


def borel_node_count(weight: int, tr_degree_bound: int) -> int:
    return 2 * (tr_degree_bound + weight + 2) + 1


def reconstruct_borel(f: RegularFunction, weight: int, tr_degree_bound: int,
                      check_points: int = 2, nodes: int | None = None) -> BorelForm:
    """Recover ``f = beta**weight * p(tr)`` exactly, with ``deg p <= tr_degree_bound``."""
    if weight < 0 or tr_degree_bound < 0:
        raise ValueError("weight and tr_degree_bound must be nonnegative")
    count = nodes or borel_node_count(weight, tr_degree_bound)
    count = max(count, tr_degree_bound + 3)
    xs = interpolation_nodes(count)
    grid = borel_grid(xs, 1)
    values = [f(p.matrix) for p in grid]
    ts = [x + 1 / x for x in xs]
    width = tr_degree_bound + 1
    coeffs = interpolate(ts[:width], values[:width])
    for t, v in zip(ts[width:], values[width:]):
        if poly_eval(coeffs, t) != v:
            raise DegreeOverflow(
                f"Borel restriction exceeds tr-degree {tr_degree_bound}", tr_degree_bound)
    # second b value fixes the weight
    scale = Fraction(2) ** weight
    for p, v in zip(borel_grid(xs[:2], 2), values[:2]):
        if f(p.matrix) != scale * v:
            raise WeightMismatch(f"function does not scale like beta^{weight} along the Borel slice")
    form = BorelForm(weight, tuple(coeffs))
    for i in range(check_points):
        g = slg_element(CHECK_PLAN, 2, i)
        if form.evaluate(g) != f(g):
            raise NotInvariant(f"function is not beta^{weight} times a class function")
    return form
