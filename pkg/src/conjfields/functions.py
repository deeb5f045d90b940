"""Ring-generic regular functions on matrix groups.

A :class:`RegularFunction` is evaluated at a :class:`SquareMatrix` whose
entries may live in any ring of the system.  Evaluating at a jet-valued
point is how vector fields act, so every constructor here must stay purely
algebraic: only ring operations, integer binomials and matrix inverses.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .matrix_ring import PowerCache, SquareMatrix


class Point:
    """A group element plus memoized powers, shared by one evaluation."""

    __slots__ = ("g", "powers", "memo")

    def __init__(self, g: SquareMatrix):
        self.g = g
        self.powers = PowerCache(g)
        self.memo: dict = {}

    @property
    def n(self) -> int:
        return self.g.n


def _as_point(g) -> Point:
    return g if isinstance(g, Point) else Point(g)


class RegularFunction:
    """Base class; subclasses implement :meth:`evaluate`."""

    def evaluate(self, pt: Point):
        raise NotImplementedError

    def __call__(self, g):
        return self.evaluate(_as_point(g))

    # -- algebra -----------------------------------------------------------
    def __add__(self, other):
        return Sum((self, lift(other)))

    def __radd__(self, other):
        return Sum((lift(other), self))

    def __sub__(self, other):
        return Sum((self, Scaled(-1, lift(other))))

    def __rsub__(self, other):
        return Sum((lift(other), Scaled(-1, self)))

    def __neg__(self):
        return Scaled(-1, self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scaled(Fraction(other), self)
        if not isinstance(other, RegularFunction):
            return NotImplemented  # lets operators define function * operator
        return Product((self, other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scaled(Fraction(other), self)
        return Product((lift(other), self))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("functions may only be raised to nonnegative integer powers")
        return Power(self, k)


def lift(x) -> RegularFunction:
    if isinstance(x, RegularFunction):
        return x
    if isinstance(x, (int, Fraction, str)):
        return Const(Fraction(x))
    raise TypeError(f"cannot use {x!r} as a regular function")


class Const(RegularFunction):
    def __init__(self, value):
        self.value = Fraction(value)

    def evaluate(self, pt):
        return self.value

    def __repr__(self):
        return str(self.value)


class Entry(RegularFunction):
    """Matrix coefficient ``g[i][j]`` (zero-based)."""

    def __init__(self, i: int, j: int):
        self.i, self.j = i, j

    def evaluate(self, pt):
        return pt.g[self.i, self.j]

    def __repr__(self):
        return f"g[{self.i}][{self.j}]"


class PowerTrace(RegularFunction):
    """``I_m(g) = tr(g**m)``, any integer m."""

    def __init__(self, m: int):
        self.m = m

    def evaluate(self, pt):
        return pt.powers.trace(self.m)

    def __repr__(self):
        return f"I({self.m})"


class TracePower(RegularFunction):
    """``J_m(g) = tr(g)**m``, m >= 0."""

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("J_m needs m >= 0")
        self.m = m

    def evaluate(self, pt):
        t = pt.powers.trace(1)
        acc = 1
        for _ in range(self.m):
            acc = acc * t
        return acc

    def __repr__(self):
        return f"J({self.m})"


def _entries(pt: Point):
    g = pt.g
    if g.n != 2:
        raise ValueError("symmetric-power functions are defined on 2x2 matrices")
    return g[0, 0], g[0, 1], g[1, 0], g[1, 1]


def _pow_list(x, top: int):
    out = [1]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def _u_coefficient(pw, a: int, b: int, k: int):
    """Coefficient of u^k v^(a+b-k) in (alpha u + beta v)^a (gamma u + delta v)^b."""
    pa, pb, pc, pd = pw
    acc = 0
    for i in range(max(0, k - b), min(a, k) + 1):
        j = k - i
        c = comb(a, i) * comb(b, j)
        term = pa[i] * pb[a - i] * pc[j] * pd[b - j]
        if term:
            acc = acc + term * c
    return acc


class SymCharacter(RegularFunction):
    """``chi_m``: trace of g on the m-th symmetric power of C^2 (m >= 0; chi_{-1} = 0)."""

    def __init__(self, m: int):
        if m < -1:
            raise ValueError("chi_m needs m >= -1")
        self.m = m

    def evaluate(self, pt):
        m = self.m
        if m < 0:
            return 0
        alpha, beta, gamma, delta = _entries(pt)
        pw = tuple(_pow_list(x, m) for x in (alpha, beta, gamma, delta))
        acc = 0
        for k in range(m + 1):
            acc = acc + _u_coefficient(pw, k, m - k, k)
        return acc

    def __repr__(self):
        return f"chi({self.m})"


class TensorCoefficient(RegularFunction):
    """Matrix function of the tensor ``(uy)^n (ux+vy)^m`` in S^d V (x) (S^d V)^*.

    Uses ``g.u = alpha u + beta v``, ``g.v = gamma u + delta v`` and the
    pairing under which ``binom(d,k) x^k y^(d-k)`` is dual to ``u^k v^(d-k)``.
    """

    def __init__(self, m: int, n: int):
        if m < 0 or n < 0:
            raise ValueError("m and n must be nonnegative")
        self.m, self.n = m, n

    def evaluate(self, pt):
        m, n = self.m, self.n
        d = m + n
        alpha, beta, gamma, delta = _entries(pt)
        pw = tuple(_pow_list(x, d) for x in (alpha, beta, gamma, delta))
        acc = 0
        for k in range(m + 1):
            c = _u_coefficient(pw, n + k, m - k, k)
            if c:
                acc = acc + c * Fraction(comb(m, k), comb(d, k))
        return acc

    def __repr__(self):
        return f"f[{self.m},{self.n}]"


class Sum(RegularFunction):
    def __init__(self, terms):
        flat = []
        for t in terms:
            flat.extend(t.terms if isinstance(t, Sum) else (t,))
        self.terms = tuple(flat)

    def evaluate(self, pt):
        acc = 0
        for t in self.terms:
            acc = acc + t.evaluate(pt)
        return acc

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.terms)) + ")"


class Product(RegularFunction):
    def __init__(self, factors):
        flat = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Product) else (f,))
        self.factors = tuple(flat)

    def evaluate(self, pt):
        acc = 1
        for f in self.factors:
            v = f.evaluate(pt)
            if not v:
                return 0
            acc = acc * v
        return acc

    def __repr__(self):
        return "*".join(map(repr, self.factors))


class Scaled(RegularFunction):
    def __init__(self, c, f: RegularFunction):
        self.c = Fraction(c)
        self.f = f

    def evaluate(self, pt):
        if not self.c:
            return 0
        v = self.f.evaluate(pt)
        return v * self.c if v else 0

    def __repr__(self):
        return f"{self.c}*{self.f!r}"


class Power(RegularFunction):
    def __init__(self, f: RegularFunction, k: int):
        self.f, self.k = f, k

    def evaluate(self, pt):
        v = self.f.evaluate(pt)
        acc = 1
        for _ in range(self.k):
            acc = acc * v
        return acc

    def __repr__(self):
        return f"{self.f!r}^{self.k}"


# short names used throughout the suites and the expression grammar
def I(m: int) -> RegularFunction:  # noqa: E743
    return PowerTrace(m)


def J(m: int) -> RegularFunction:
    return TracePower(m)


def chi(m: int) -> RegularFunction:
    return SymCharacter(m)


beta = Entry(0, 1)


def beta_trace_monomial(m: int, n: int) -> RegularFunction:
    """``tr(g)**m * g_12**n``."""
    return Product((TracePower(m), Power(beta, n)))


def tensor_coefficient(m: int, n: int) -> RegularFunction:
    return TensorCoefficient(m, n)
