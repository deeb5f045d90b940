"""Invariant differential operators on SL(2) and kernel computations.

Operators are immutable composition trees over first-order fields.  Applying
one to a :class:`RegularFunction` yields another RegularFunction whose
evaluation runs through nested jets, so there is exactly one
differentiation mechanism for every operator in here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .class_algebra import BorelForm, DegreeOverflow, reconstruct_borel
from .exact_core import ConjFieldsError
from .fields import ConstantMap, FieldApplied, FieldMap, SecondOrderApplied, make_psi
from .functions import J, beta_trace_monomial, RegularFunction, Scaled, Sum, beta, lift
from .linalg import nullspace, rank
from .matrix_ring import SquareMatrix
from .sampling import SamplePlan, slg_element


class NormalizationError(ConjFieldsError):
    pass


E = SquareMatrix.from_rationals([[0, 1], [0, 0]])
F = SquareMatrix.from_rationals([[0, 0], [1, 0]])
H = SquareMatrix.from_rationals([[1, 0], [0, -1]])


def left_invariant(direction: SquareMatrix, label: str = "") -> "FieldOp":
    """``X^ f(g) = d/dt f(g(1 + tX))``."""
    return FieldOp(ConstantMap(direction, label))


class InvariantOperator:
    def apply(self, f: RegularFunction, route: str = "nested") -> RegularFunction:
        raise NotImplementedError

    def __call__(self, f, route: str = "nested") -> RegularFunction:
        return self.apply(lift(f), route)

    def __add__(self, other: "InvariantOperator") -> "InvariantOperator":
        return Combo(((Fraction(1), self), (Fraction(1), other)))

    def __sub__(self, other: "InvariantOperator") -> "InvariantOperator":
        return Combo(((Fraction(1), self), (Fraction(-1), other)))

    def __neg__(self):
        return Combo(((Fraction(-1), self),))

    def __mul__(self, other):
        if isinstance(other, InvariantOperator):
            return Compose(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Combo(((Fraction(other), self),))
        if isinstance(other, RegularFunction):
            return MulBy(other, self)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise ValueError("operator powers must be positive integers")
        out = self
        for _ in range(k - 1):
            out = Compose(self, out)
        return out


@dataclass(frozen=True)
class FieldOp(InvariantOperator):
    field_map: FieldMap

    def apply(self, f, route="nested"):
        return FieldApplied(self.field_map, f)

    def __repr__(self):
        return repr(self.field_map)


@dataclass(frozen=True)
class Compose(InvariantOperator):
    outer: InvariantOperator
    inner: InvariantOperator

    def apply(self, f, route="nested"):
        if route == "mixed" and isinstance(self.outer, FieldOp) and isinstance(self.inner, FieldOp):
            return SecondOrderApplied(self.outer.field_map, self.inner.field_map, f)
        return self.outer.apply(self.inner.apply(f, route), route)

    def __repr__(self):
        return f"{self.outer!r}∘{self.inner!r}"


@dataclass(frozen=True)
class MulBy(InvariantOperator):
    factor: RegularFunction
    op: InvariantOperator

    def apply(self, f, route="nested"):
        return self.factor * self.op.apply(f, route)

    def __repr__(self):
        return f"({self.factor!r})·{self.op!r}"


@dataclass(frozen=True)
class Combo(InvariantOperator):
    terms: tuple  # ((Fraction, InvariantOperator), ...)

    def apply(self, f, route="nested"):
        return Sum(tuple(Scaled(c, op.apply(f, route)) for c, op in self.terms))

    def __repr__(self):
        return " + ".join(f"{c}*{op!r}" for c, op in self.terms)


def apply_operator(op: InvariantOperator, f: RegularFunction, route: str = "nested") -> RegularFunction:
    return op.apply(lift(f), route)


_VALIDATION_PLAN = SamplePlan(seed=7, count=2, height_bound=4)


def casimir(validate: bool = True) -> InvariantOperator:
    """``H^H^ + 2 E^F^ + 2 F^E^``, checked to act by d(d+2) on beta^d."""
    e, f, h = left_invariant(E, "E"), left_invariant(F, "F"), left_invariant(H, "H")
    delta = Combo(((Fraction(1), Compose(h, h)), (Fraction(2), Compose(e, f)),
                   (Fraction(2), Compose(f, e))))
    if validate:
        for d in range(5):
            bd = beta ** d
            out = delta.apply(bd)
            for i in range(_VALIDATION_PLAN.count):
                g = slg_element(_VALIDATION_PLAN, 2, i)
                if out(g) != d * (d + 2) * bd(g):
                    raise NormalizationError(
                        f"candidate Casimir fails Delta beta^{d} = {d * (d + 2)} beta^{d}")
    return delta


def psi_operator(k: int = 1) -> FieldOp:
    return FieldOp(make_psi(k))


def separation_operator(delta: InvariantOperator | None = None) -> InvariantOperator:
    """``-tr^3 Delta + tr Psi^2 + (tr^2 + 4) Psi`` with Psi = Psi_1."""
    delta = delta or casimir()
    psi = psi_operator(1)
    return Combo(((Fraction(-1), MulBy(J(3), delta)),
                  (Fraction(1), MulBy(J(1), Compose(psi, psi))),
                  (Fraction(1), MulBy(J(2) + 4, psi))))


# ---------------------------------------------------------------------------
# kernel scans on weight spaces
# ---------------------------------------------------------------------------

DEGREE_RAISE = 3
DEGREE_MARGIN = 2


@dataclass
class KernelScan:
    weight: int
    max_tr_degree: int
    columns: list  # BorelForm of op(beta^n tr^m), m = 0..M
    matrix: list  # (M + 4) x (M + 1) rational matrix
    matrix_rank: int
    kernel: list  # BorelForms spanning the kernel

    def to_json(self) -> dict:
        return {
            "params": {"weight": self.weight, "max_tr_degree": self.max_tr_degree},
            "matrix_rank": self.matrix_rank,
            "kernel_basis": [k.format() for k in self.kernel],
        }


def image_form(op: InvariantOperator, m: int, weight: int, bound: int,
               route: str = "nested", nodes: int | None = None) -> BorelForm:
    return reconstruct_borel(op.apply(beta_trace_monomial(m, weight), route), weight, bound, nodes=nodes)


def kernel_scan(op: InvariantOperator, weight: int, max_tr_degree: int,
                route: str = "nested", nodes: int | None = None) -> KernelScan:
    """Exact kernel of ``op`` on span{beta^n tr^m : m <= M}."""
    big = max_tr_degree + DEGREE_RAISE
    bound = big + DEGREE_MARGIN
    columns = []
    for m in range(max_tr_degree + 1):
        form = image_form(op, m, weight, bound, route, nodes)
        if form.degree > big:
            raise DegreeOverflow(
                f"image of beta^{weight} tr^{m} has tr-degree {form.degree} > {big}", big)
        columns.append(form)
    matrix = [[col.poly[i] if i < len(col.poly) else Fraction(0) for col in columns]
              for i in range(big + 1)]
    kern = nullspace(matrix, max_tr_degree + 1)
    kernel = [BorelForm(weight, tuple(v)) for v in kern]
    return KernelScan(weight, max_tr_degree, columns, matrix, rank(matrix), kernel)


@dataclass
class RTildeRow:
    m: int
    n: int
    remainder: BorelForm
    asserted: bool  # forced to vanish (m = 0, or the proven n = 0, m = 2 case)

    @property
    def vanishes(self) -> bool:
        return self.remainder.is_zero()

    def to_json(self) -> dict:
        return {"params": {"m": self.m, "n": self.n}, "vanishes": self.vanishes,
                "remainder": self.remainder.format(),
                "status": ("pass" if self.vanishes else "fail") if self.asserted else "reported"}


def casimir_prediction(m: int, n: int) -> BorelForm:
    """``(n+m)(n+m+2) tr^m + 4m(1-m) tr^{m-2}`` at weight n."""
    d = {m: Fraction((n + m) * (n + m + 2))}
    if m >= 2:
        d[m - 2] = Fraction(4 * m * (1 - m))
    return BorelForm.from_dict(n, {k: v for k, v in d.items() if v})


def rtilde_probe(max_m: int, max_n: int, delta: InvariantOperator | None = None,
                 nodes: int | None = None) -> list[RTildeRow]:
    """Remainder of Delta(beta^n tr^m) beyond its two leading terms, for each (m, n)."""
    delta = delta or casimir()
    rows = []
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            form = image_form(delta, m, n, m + DEGREE_MARGIN, nodes=nodes)
            rem = form - casimir_prediction(m, n)
            rows.append(RTildeRow(m, n, rem, asserted=(m == 0 or (m, n) == (2, 0))))
    return rows


# ---------------------------------------------------------------------------
# the Weyl group acting on the torus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylTorusOperator:
    """``(t - 1/t) theta + sign (t + 1/t) theta^2`` with theta = t d/dt."""

    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def on_monomial(self, k: int) -> dict:
        """Image of t^k as {exponent: coefficient}."""
        up = k + self.sign * k * k
        down = -k + self.sign * k * k
        out: dict = {}
        if up:
            out[k + 1] = Fraction(up)
        if down:
            out[k - 1] = out.get(k - 1, 0) + Fraction(down)
        return {e: c for e, c in out.items() if c}

    def __call__(self, laurent: dict) -> dict:
        out: dict = {}
        for k, c in laurent.items():
            for e, v in self.on_monomial(k).items():
                out[e] = out.get(e, 0) + c * v
        return {e: c for e, c in out.items() if c}

    def kernel(self, window: int = 10) -> list[dict]:
        """Exact kernel on span{t^-window, ..., t^window}."""
        exps = list(range(-window, window + 1))
        targets = list(range(-window - 1, window + 2))
        cols = [self.on_monomial(k) for k in exps]
        matrix = [[col.get(e, Fraction(0)) for col in cols] for e in targets]
        return [{exps[i]: c for i, c in enumerate(v) if c}
                for v in nullspace(matrix, len(exps))]


EXPECTED_WEYL_KERNEL = ({0: Fraction(1)}, {1: Fraction(1), -1: Fraction(-1)})


def same_span(a: Sequence[dict], b: Sequence[dict]) -> bool:
    exps = sorted({e for v in list(a) + list(b) for e in v})
    def mat(vs):
        return [[v.get(e, Fraction(0)) for e in exps] for v in vs]
    ra, rb = rank(mat(a)) if a else 0, rank(mat(b)) if b else 0
    return ra == rb == (rank(mat(list(a) + list(b))) if (a or b) else 0)


@dataclass
class WeylResolution:
    printed_sign: int
    resolved_sign: int | None
    kernels: dict = field(default_factory=dict)  # sign -> kernel basis

    @property
    def matches_printed(self) -> bool:
        return self.resolved_sign == self.printed_sign


def resolve_weyl_sign(window: int = 10) -> WeylResolution:
    """Pick the sign whose kernel is exactly span{1, t - 1/t}."""
    kernels = {s: WeylTorusOperator(s).kernel(window) for s in (1, -1)}
    good = [s for s, k in kernels.items() if same_span(k, EXPECTED_WEYL_KERNEL)]
    return WeylResolution(printed_sign=1, resolved_sign=good[0] if len(good) == 1 else None,
                          kernels=kernels)


def weyl_torus_operator(sign: int) -> WeylTorusOperator:
    return WeylTorusOperator(sign)
