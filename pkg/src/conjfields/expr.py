"""Textual expressions for functions and invariant operators.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | NAME '(' ['-'] INT ')' | '(' expr ')'

Function atoms: ``I(m)``, ``J(m)``, ``chi(m)``, ``beta``, numbers.  Operator
atoms: ``Phi(k)``, ``Psi(k)``, ``D``, ``Delta``, ``E``, ``F``, ``H``.  A
product of two operators is composition; a function times an operator
multiplies the operator's output by that function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact_core import ConjFieldsError
from .fields import make_phi, make_psi
from .functions import Const, RegularFunction, beta, chi, I, J, lift
from .operators import (E, F, H, Combo, FieldOp, InvariantOperator, MulBy, casimir,
                        left_invariant, separation_operator)

FUNCTION_ATOMS = ("I", "J", "chi")
FIELD_ATOMS = ("Phi", "Psi")
BARE_OPERATORS = ("D", "Delta", "E", "F", "H")


class ParseError(ConjFieldsError):
    def __init__(self, text: str, position: int, expected: list[str], found: str):
        self.text, self.position, self.expected, self.found = text, position, expected, found
        exp = ", ".join(expected)
        super().__init__(f"parse error at position {position}: expected {exp}; found {found}")

    def caret(self) -> str:
        return f"  {self.text}\n  {' ' * self.position}^"


class TypeMismatch(ConjFieldsError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if num is not None:
            out.append(Token("num", num, start))
        elif name is not None:
            out.append(Token("name", name, start))
        elif op is not None:
            if op not in "+-*/^()":
                raise ParseError(text, start, ["number", "name", "'('"], repr(op))
            out.append(Token("op", op, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# ---------------------------------------------------------------------------
# typed values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Func:
    f: RegularFunction
    weight: int | None  # None for the zero function, which has every weight


@dataclass(frozen=True)
class Op:
    op: InvariantOperator


def _num(v) -> Func:
    v = Fraction(v)
    return Func(lift(v), 0 if v else None)


def _join_weight(a: int | None, b: int | None, what: str) -> int | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise TypeMismatch(f"cannot {what} functions of weights {a} and {b}")


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.n = n

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected: list[str]):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(self.text, t.pos, expected, found)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.eat(text):
            self.fail([repr(text)])

    def integer(self) -> int:
        neg = self.eat("-")
        if self.tok.kind != "num":
            self.fail(["integer"])
        v = int(self.tok.text)
        self.i += 1
        return -v if neg else v

    # -- grammar -------------------------------------------------------------
    def parse(self):
        v = self.expr()
        if self.tok.kind != "end":
            self.fail(["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"])
        return v

    def expr(self):
        v = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            v = _add(v, self.term(), sign)
        return v

    def term(self):
        v = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            if self.eat("*"):
                v = _mul(v, self.unary())
            else:
                self.i += 1
                pos = self.tok.pos
                d = self.unary()
                if not _constant_value(d):
                    raise TypeMismatch(f"position {pos}: can only divide by a nonzero number")
                v = _mul(v, _num(1 / _constant_value(d)))
        return v

    def unary(self):
        if self.eat("-"):
            return _mul(_num(-1), self.unary())
        return self.power()

    def power(self):
        v = self.atom()
        if self.eat("^"):
            if self.tok.kind != "num":
                self.fail(["nonnegative integer exponent"])
            k = int(self.tok.text)
            self.i += 1
            if isinstance(v, Op):
                if k < 1:
                    raise TypeMismatch("operator exponents must be at least 1")
                return Op(v.op ** k)
            c = _constant_value(v)
            if c is not None:
                return _num(c ** k)
            return Func(v.f ** k, None if v.weight is None else v.weight * k)
        return v

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return _num(int(t.text))
        if self.eat("("):
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "name":
            self.i += 1
            name = t.text
            if name in FUNCTION_ATOMS + FIELD_ATOMS:
                self.expect("(")
                pos = self.tok.pos
                k = self.integer()
                self.expect(")")
                return self.indexed(name, k, pos)
            if name == "beta":
                return Func(beta, 1)
            if name in BARE_OPERATORS:
                return Op(_named_operator(name))
            self.i -= 1
        self.fail(["number", "'('", "I(m)", "J(m)", "chi(m)", "beta", "Phi(k)", "Psi(k)",
                   "D", "Delta", "E", "F", "H"])

    def indexed(self, name: str, k: int, pos: int):
        if name == "I":
            return Func(I(k), 0)
        if name == "J":
            if k < 0:
                raise TypeMismatch(f"position {pos}: J(m) needs m >= 0")
            return Func(J(k), 0)
        if name == "chi":
            if k < -1:
                raise TypeMismatch(f"position {pos}: chi(m) needs m >= -1")
            return Func(chi(k), 0)
        if name == "Phi":
            return Op(FieldOp(make_phi(self.n, k)))
        return Op(FieldOp(make_psi(k)))


_CONSTANTS: dict = {}


def _constant_value(v) -> Fraction | None:
    if isinstance(v, Func) and isinstance(v.f, Const):
        return v.f.value
    return None


def _named_operator(name: str) -> InvariantOperator:
    if name not in _CONSTANTS:
        if name == "Delta":
            _CONSTANTS[name] = casimir()
        elif name == "D":
            _CONSTANTS[name] = separation_operator(_named_operator("Delta"))
        else:
            _CONSTANTS[name] = left_invariant({"E": E, "F": F, "H": H}[name], name)
    return _CONSTANTS[name]


def _add(a, b, sign: int):
    if isinstance(a, Func) and isinstance(b, Func):
        ca, cb = _constant_value(a), _constant_value(b)
        if ca is not None and cb is not None:
            return _num(ca + sign * cb)
        return Func(a.f + b.f if sign > 0 else a.f - b.f, _join_weight(a.weight, b.weight, "add"))
    if isinstance(a, Op) and isinstance(b, Op):
        return Op(a.op + b.op if sign > 0 else a.op - b.op)
    raise TypeMismatch("cannot add a function and an operator")


def _mul(a, b):
    if isinstance(a, Func) and isinstance(b, Func):
        ca, cb = _constant_value(a), _constant_value(b)
        if ca is not None and cb is not None:
            return _num(ca * cb)
        if ca == 0 or cb == 0:
            return _num(0)
        if ca is not None:
            return Func(b.f * ca, b.weight)
        if cb is not None:
            return Func(a.f * cb, a.weight)
        w = None if None in (a.weight, b.weight) else a.weight + b.weight
        return Func(a.f * b.f, w)
    if isinstance(a, Op) and isinstance(b, Op):
        return Op(a.op * b.op)
    if isinstance(a, Func) and isinstance(b, Op):
        c = _constant_value(a)
        if c is not None:
            return Op(Combo(((c, b.op),)))
        return Op(MulBy(a.f, b.op))
    raise TypeMismatch("an operator may only be multiplied on the left by a function; "
                       "write the function first")


def parse(text: str, n: int = 2):
    """Parse ``text`` to a :class:`Func` or :class:`Op`."""
    return _Parser(text, n).parse()


def parse_function(text: str, n: int = 2) -> Func:
    v = parse(text, n)
    if not isinstance(v, Func):
        raise TypeMismatch(f"{text!r} is an operator, expected a function")
    return v


def parse_operator(text: str, n: int = 2) -> InvariantOperator:
    v = parse(text, n)
    if not isinstance(v, Op):
        raise TypeMismatch(f"{text!r} is a function, expected a field or operator")
    return v.op
