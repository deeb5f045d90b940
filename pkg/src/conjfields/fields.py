"""Conjugation-equivariant maps G -> g and the vector fields they define.

A map ``Phi`` defines the field ``(X f)(g) = d/dt f(g (1 + t Phi(g)))`` at
``t = 0``.  Derivatives are exact: the point is lifted into a jet ring one
level above its own ring, so fields compose by plain nesting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_core import Jet2
from .functions import Point, RegularFunction, _as_point
from .matrix_ring import SquareMatrix


# ---------------------------------------------------------------------------
# coefficients: polynomials in the symbols tr(g^j)
# ---------------------------------------------------------------------------

Monomial = tuple  # sorted tuple of (j, exponent) pairs


@dataclass(frozen=True)
class InvariantCoefficient:
    """Polynomial with rational coefficients in the class functions tr(g^j)."""

    terms: tuple = ()  # tuple of (Monomial, Fraction), no zero coefficients

    @classmethod
    def const(cls, c) -> "InvariantCoefficient":
        c = Fraction(c)
        return cls((((), c),)) if c else cls()

    @classmethod
    def tr(cls, j: int, c=1) -> "InvariantCoefficient":
        return cls._from_dict({((j, 1),): Fraction(c)})

    @classmethod
    def _from_dict(cls, d: dict) -> "InvariantCoefficient":
        return cls(tuple(sorted((m, c) for m, c in d.items() if c)))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = _coef(other)
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return self._from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return InvariantCoefficient(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        return self + (-_coef(other))

    def __rsub__(self, other):
        return _coef(other) - self

    def __mul__(self, other):
        other = _coef(other)
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return self._from_dict(d)

    __rmul__ = __mul__

    def evaluate(self, pt: Point):
        acc = 0
        for mono, c in self.terms:
            v = c
            for j, e in mono:
                t = pt.powers.trace(j)
                for _ in range(e):
                    v = v * t
            acc = acc + v
        return acc

    def differential(self, pt: Point, x: SquareMatrix):
        """d/dt of the coefficient along g + tX: uses d tr(g^j)[X] = j tr(g^{j-1} X)."""
        acc = 0
        for mono, c in self.terms:
            for idx, (j, e) in enumerate(mono):
                if j == 0:
                    continue
                dtr = (pt.powers(j - 1) * x).trace() * j
                v = c * e
                for j2, e2 in mono:
                    t = pt.powers.trace(j2)
                    for _ in range(e2 - (1 if j2 == j else 0)):
                        v = v * t
                acc = acc + v * dtr
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms:
            sym = "*".join(f"I({j})" + (f"^{e}" if e > 1 else "") for j, e in mono)
            parts.append(f"{c}" + (f"*{sym}" if sym else ""))
        return " + ".join(parts)


def _coef(x) -> InvariantCoefficient:
    if isinstance(x, InvariantCoefficient):
        return x
    return InvariantCoefficient.const(x)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for j, e in b:
        d[j] = d.get(j, 0) + e
    return tuple(sorted(d.items()))


# ---------------------------------------------------------------------------
# maps G -> g
# ---------------------------------------------------------------------------


class FieldMap:
    """Anything evaluable to a matrix at a (possibly jet-valued) point."""

    n: int

    def evaluate(self, pt: Point) -> SquareMatrix:
        raise NotImplementedError

    def __call__(self, g) -> SquareMatrix:
        return self.evaluate(_as_point(g))


@dataclass(frozen=True)
class FieldMapSpec(FieldMap):
    """``sum_k c_k(g) g^k + s(g) 1`` with class-function coefficients."""

    n: int
    terms: tuple = ()  # ((k, InvariantCoefficient), ...), sorted by k
    scalar: InvariantCoefficient = field(default_factory=InvariantCoefficient)
    label: str = ""

    @classmethod
    def build(cls, n: int, terms: Iterable, scalar=0, label: str = "") -> "FieldMapSpec":
        d: dict = {}
        for k, c in terms:
            d[k] = d.get(k, InvariantCoefficient()) + _coef(c)
        return cls(n, tuple(sorted((k, c) for k, c in d.items() if c)), _coef(scalar), label)

    def evaluate(self, pt: Point) -> SquareMatrix:
        out = None
        for k, c in self.terms:
            term = pt.powers(k).scale(c.evaluate(pt))
            out = term if out is None else out + term
        if out is None:
            out = SquareMatrix.zero(self.n)
        if self.scalar:
            out = out + SquareMatrix.identity(self.n).scale(self.scalar.evaluate(pt))
        return out

    # -- linear structure over the invariants ------------------------------
    def __add__(self, other: "FieldMapSpec") -> "FieldMapSpec":
        _same_n(self, other)
        return FieldMapSpec.build(self.n, list(self.terms) + list(other.terms),
                                  self.scalar + other.scalar)

    def __neg__(self):
        return self.times(-1)

    def __sub__(self, other: "FieldMapSpec") -> "FieldMapSpec":
        return self + (-other)

    def times(self, c) -> "FieldMapSpec":
        """Multiply by a rational or an :class:`InvariantCoefficient`."""
        c = _coef(c)
        return FieldMapSpec.build(self.n, [(k, a * c) for k, a in self.terms], self.scalar * c)

    def __mul__(self, c):
        return self.times(c)

    __rmul__ = __mul__

    def closed_differential(self, pt: Point, x: SquareMatrix) -> SquareMatrix:
        """Product-rule formula: dc[X] g^k + c(g) sum_i g^i X g^(k-1-i)."""
        out = SquareMatrix.zero(self.n)
        for k, c in self.terms:
            dc = c.differential(pt, x)
            if dc:
                out = out + pt.powers(k).scale(dc)
            cv = c.evaluate(pt)
            if cv:
                out = out + _dpow(pt, k, x).scale(cv)
        if self.scalar:
            ds = self.scalar.differential(pt, x)
            if ds:
                out = out + SquareMatrix.identity(self.n).scale(ds)
        return out

    def __repr__(self):
        if self.label:
            return self.label
        parts = [f"({c!r})*g^{k}" for k, c in self.terms]
        if self.scalar:
            parts.append(f"({self.scalar!r})*1")
        return " + ".join(parts) if parts else "0"


def _same_n(a: FieldMap, b: FieldMap):
    if a.n != b.n:
        raise ValueError(f"maps on SL({a.n}) and SL({b.n}) cannot be combined")


def _dpow(pt: Point, k: int, x: SquareMatrix) -> SquareMatrix:
    """d/dt (g + tX)^k for integer k."""
    out = SquareMatrix.zero(x.n)
    if k > 0:
        for i in range(k):
            out = out + pt.powers(i) * x * pt.powers(k - 1 - i)
    elif k < 0:
        m = -k
        for i in range(1, m + 1):
            out = out - pt.powers(-i) * x * pt.powers(-(m + 1 - i))
    return out


@dataclass(frozen=True)
class ConstantMap(FieldMap):
    """``g -> X`` for a fixed matrix X: the left-invariant field of X."""

    direction: SquareMatrix
    label: str = ""

    @property
    def n(self) -> int:
        return self.direction.n

    def evaluate(self, pt):
        return self.direction

    def __repr__(self):
        return self.label or f"const{self.direction}"


def make_phi(n: int, k: int) -> FieldMapSpec:
    """``Phi_k(g) = g^k - (1/n) tr(g^k) 1``."""
    return FieldMapSpec.build(n, [(k, 1)], InvariantCoefficient.tr(k, Fraction(-1, n)),
                              label=f"Phi({k})")


def make_psi(k: int) -> FieldMapSpec:
    """``Psi_k(g) = g^k - g^-k`` on SL(2); Psi_0 = 0 and Psi_-k = -Psi_k."""
    return FieldMapSpec.build(2, [(k, 1), (-k, -1)], label=f"Psi({k})")


def eval_map(phi: FieldMap, g) -> SquareMatrix:
    return phi.evaluate(_as_point(g))


# ---------------------------------------------------------------------------
# differentials and commutators
# ---------------------------------------------------------------------------


def lift_along(g: SquareMatrix, direction: SquareMatrix, slot: int = 1) -> SquareMatrix:
    """``g + e*direction`` with e a fresh infinitesimal one level above g's ring."""
    level = max(g.ring_level(), direction.ring_level()) + 1
    rows = []
    for i in range(g.n):
        row = []
        for j in range(g.n):
            d = direction[i, j]
            if slot == 1:
                row.append(Jet2(g[i, j], d, 0, 0, level))
            else:
                row.append(Jet2(g[i, j], 0, d, 0, level))
        rows.append(row)
    return SquareMatrix(rows)


def _part(x, level: int, attr: str):
    if isinstance(x, Jet2) and x.level == level:
        return getattr(x, attr)
    return 0


def _matrix_part(m: SquareMatrix, level: int, attr: str = "c10") -> SquareMatrix:
    return m.map(lambda x: _part(x, level, attr))


def differential(phi: FieldMap, g, x: SquareMatrix, route: str = "jet") -> SquareMatrix:
    """``d/dt phi(g + tX)`` at t = 0.

    ``route="jet"`` differentiates by evaluating at a jet-valued point;
    ``route="closed"`` uses the product-rule formula (FieldMapSpec only).
    """
    pt = _as_point(g)
    if route == "closed":
        if not isinstance(phi, FieldMapSpec):
            raise TypeError("closed-form differential needs a FieldMapSpec")
        return phi.closed_differential(pt, x)
    if route != "jet":
        raise ValueError(f"unknown route {route!r}")
    lifted = lift_along(pt.g, x)
    level = lifted.ring_level()
    return _matrix_part(phi(lifted), level)


def star_commutator(phi: FieldMap, psi: FieldMap, g, route: str = "jet") -> SquareMatrix:
    """``dPsi_g(g Phi(g)) - dPhi_g(g Psi(g))``."""
    pt = _as_point(g)
    a = phi.evaluate(pt)
    b = psi.evaluate(pt)
    return (differential(psi, pt, pt.g * a, route)
            - differential(phi, pt, pt.g * b, route))


def sharp_commutator(phi: FieldMap, psi: FieldMap, y, route: str = "jet") -> SquareMatrix:
    """Bracket on the Cartan-embedded locus, curvature term included."""
    pt = _as_point(y)
    a = phi.evaluate(pt)
    b = psi.evaluate(pt)
    return (differential(psi, pt, pt.g.anticommutator(a), route)
            - differential(phi, pt, pt.g.anticommutator(b), route)
            + a.commutator(b).scale(Fraction(1, 2)))


def curvature_term(phi: FieldMap, psi: FieldMap, y) -> SquareMatrix:
    pt = _as_point(y)
    return phi.evaluate(pt).commutator(psi.evaluate(pt)).scale(Fraction(1, 2))


@dataclass(frozen=True)
class StarMap(FieldMap):
    """The map ``Phi (*) Psi`` as a field map in its own right."""

    phi: FieldMap
    psi: FieldMap
    route: str = "jet"

    @property
    def n(self) -> int:
        return self.phi.n

    def evaluate(self, pt):
        return star_commutator(self.phi, self.psi, pt, self.route)

    def __repr__(self):
        return f"[{self.phi!r}, {self.psi!r}]"


# ---------------------------------------------------------------------------
# action on functions
# ---------------------------------------------------------------------------


class FieldApplied(RegularFunction):
    """The function ``X f`` for the field X of ``phi``; evaluable anywhere."""

    def __init__(self, phi: FieldMap, f: RegularFunction):
        self.phi, self.f = phi, f

    def evaluate(self, pt: Point):
        g = pt.g
        lifted = lift_along(g, g * self.phi.evaluate(pt))
        return _part(self.f(lifted), lifted.ring_level(), "c10")

    def __repr__(self):
        return f"{self.phi!r}.({self.f!r})"


def apply_field(phi: FieldMap, f: RegularFunction, g=None):
    """``(X f)(g)``; with ``g`` omitted, the function ``X f`` itself."""
    xf = FieldApplied(phi, f)
    if g is None:
        return xf
    return xf(g)


def second_order(phi: FieldMap, psi: FieldMap, f: RegularFunction, g):
    """``X(Y f)(g)`` from a single two-infinitesimal jet (coefficient of e1 e2)."""
    pt = _as_point(g)
    g0 = pt.g
    level = g0.ring_level() + 1
    gs = lift_along(g0, g0 * phi.evaluate(pt), slot=1)
    e2 = Jet2(0, 0, 1, 0, level)
    step = (gs * psi(gs)).map(lambda a: a * e2 if a else 0)
    value = f(gs + step)
    return _part(value, level, "c11")


class SecondOrderApplied(RegularFunction):
    """``X(Y f)`` as a function, evaluated through :func:`second_order`."""

    def __init__(self, phi: FieldMap, psi: FieldMap, f: RegularFunction):
        self.phi, self.psi, self.f = phi, psi, f

    def evaluate(self, pt):
        return second_order(self.phi, self.psi, self.f, pt)

    def __repr__(self):
        return f"{self.phi!r}.{self.psi!r}.({self.f!r})"


# ---------------------------------------------------------------------------
# flatness
# ---------------------------------------------------------------------------


@dataclass
class FlatnessResult:
    flat: bool
    witness: SquareMatrix | None = None

    def __bool__(self):
        return self.flat


def is_flat(phi: FieldMap, samples: Sequence[SquareMatrix]) -> FlatnessResult:
    """True iff ``y Phi(y) y^-1 == Phi(y)`` at every sample; else the first failing y."""
    for y in samples:
        pt = Point(y)
        v = phi.evaluate(pt)
        if y * v * pt.powers(-1) != v:
            return FlatnessResult(False, y)
    return FlatnessResult(True)
