from __future__ import annotations

from fractions import Fraction

import pytest

from conjfields.expr import (Func, Op, ParseError, TypeMismatch, parse, parse_function,
                             parse_operator, tokenize)
from conjfields.functions import I, J, beta


def test_tokenize_positions():
    toks = tokenize(" Psi( 3 )")
    assert [(t.text, t.pos) for t in toks] == [("Psi", 1), ("(", 4), ("3", 6), (")", 8), ("", 9)]


def test_function_values_and_weights(sl2):
    f = parse_function("beta^2*J(3) - 2*beta^2")
    assert f.weight == 2
    g = sl2[0]
    assert f.f(g) == (beta ** 2 * J(3))(g) - 2 * beta(g) ** 2
    assert parse_function("I(2) + 3/2").weight == 0
    assert parse_function("I(2) + 3/2").f(g) == I(2)(g) + Fraction(3, 2)
    assert parse_function("0").weight is None
    assert parse_function("-I(-1)").f(g) == -I(-1)(g)
    assert parse_function("(beta)^0").weight == 0


def test_mixed_weights_rejected():
    with pytest.raises(TypeMismatch):
        parse_function("beta + 1")


def test_operators_parse(sl2):
    op = parse_operator("J(1)*Psi(1)^2 + 2*D - Delta")
    assert op is not None
    assert isinstance(parse("E*F"), Op)
    with pytest.raises(TypeMismatch):
        parse("Psi(1)*I(2)")
    with pytest.raises(TypeMismatch):
        parse_operator("I(2)")
    with pytest.raises(TypeMismatch):
        parse_function("Psi(1)")
    with pytest.raises(TypeMismatch):
        parse("Psi(1) + I(1)")


@pytest.mark.parametrize("text,pos,expected", [
    ("I(2", 3, "')'"),
    ("Psi(x)", 4, "integer"),
    ("2 +", 3, "number"),
    ("I(2) I(3)", 5, "end of input"),
    ("foo", 0, "I(m)"),
    ("beta^", 5, "nonnegative integer exponent"),
])
def test_parse_errors_report_position_and_expectations(text, pos, expected):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos
    assert expected in info.value.expected
    assert f"position {pos}" in str(info.value)


def test_bad_character():
    with pytest.raises(ParseError) as info:
        parse("I(2) $ 3")
    assert info.value.position == 5


def test_division_only_by_numbers():
    with pytest.raises(TypeMismatch):
        parse("I(2)/I(1)")
    with pytest.raises(TypeMismatch):
        parse("I(2)/0")
    assert isinstance(parse("I(2)/3"), Func)
