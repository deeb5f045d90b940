from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conjfields.class_algebra import (BorelForm, ClassForm, DegreeOverflow, NotInvariant,
                                      NotSymmetric, WeightMismatch, interpolate, poly_eval,
                                      reconstruct_borel, restrict_to_torus, to_basis)
from conjfields.fields import apply_field, make_psi
from conjfields.functions import Const, Entry, I, J, beta, chi, tensor_coefficient


def test_restrict_examples():
    assert restrict_to_torus(I(5), 5).as_dict() == {5: 1, -5: 1}
    assert restrict_to_torus(chi(3), 3).as_dict() == {3: 1, 1: 1, -1: 1, -3: 1}
    assert restrict_to_torus(chi(3), 3).to_basis("I") == {3: 1, 1: 1}
    assert restrict_to_torus(Const(1), 0).as_dict() == {0: 1}


def test_to_basis_examples():
    assert to_basis(restrict_to_torus(chi(3), 3), "J") == {3: 1, 1: -2}
    assert to_basis(restrict_to_torus(I(2), 2), "J") == {2: 1, 0: -2}
    assert to_basis(restrict_to_torus(J(1), 1), "I") == {1: 1}


def test_degree_overflow_and_symmetry_errors():
    with pytest.raises(DegreeOverflow):
        restrict_to_torus(I(6), 4)
    with pytest.raises(NotSymmetric):
        restrict_to_torus(Entry(0, 0), 2)
    with pytest.raises(NotInvariant):
        restrict_to_torus(Entry(0, 0) + Entry(1, 1) + Entry(0, 1), 2)
    with pytest.raises(NotSymmetric):
        ClassForm.from_laurent({1: 1})


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["I", "J", "chi"]),
       st.dictionaries(st.integers(0, 12), st.fractions(max_denominator=9), max_size=6))
def test_basis_round_trip(basis, coeffs):
    coeffs = {k: v for k, v in coeffs.items() if v}
    assert ClassForm.from_basis(basis, coeffs).to_basis(basis) == dict(sorted(coeffs.items()))


@pytest.mark.parametrize("k", range(0, 11))
def test_character_formulas(k):
    c = restrict_to_torus(chi(k), k).as_dict()
    x = sympy.symbols("x")
    lhs = sympy.expand(sum(sympy.Rational(str(v)) * x**e for e, v in c.items()) * (x - 1 / x))
    assert sympy.simplify(lhs - (x ** (k + 1) - x ** (-(k + 1)))) == 0
    want = {j: 1 for j in range(k, 0, -2)}
    if k % 2 == 0:
        want[0] = 1
    assert restrict_to_torus(chi(k), k).to_basis("I") == want


def test_chi_in_j_basis_alternating_formula():
    from math import comb
    for m in range(11):
        want = {m - 2 * k: (-1) ** k * comb(m - k, k) for k in range(m // 2 + 1)}
        assert restrict_to_torus(chi(m), m).to_basis("J") == {k: v for k, v in sorted(want.items()) if v}


def test_interpolation_matches_sympy():
    nodes = [Fraction(k) for k in range(2, 8)]
    values = [Fraction(k * k * k - 3, k + 1) for k in range(6)]
    coeffs = interpolate(nodes, values)
    t = sympy.symbols("t")
    poly = sympy.interpolate(list(zip([int(x) for x in nodes],
                                      [sympy.Rational(str(v)) for v in values])), t)
    assert [Fraction(str(c)) for c in reversed(sympy.Poly(poly, t).all_coeffs())] == coeffs
    assert all(poly_eval(coeffs, x) == v for x, v in zip(nodes, values))


def test_reconstruct_borel_examples():
    assert reconstruct_borel(beta ** 2, 2, 3) == BorelForm(2, (1,))
    assert reconstruct_borel(beta * J(3), 1, 4) == BorelForm.from_dict(1, {3: 1})
    assert reconstruct_borel(tensor_coefficient(2, 1), 1, 4) == BorelForm.from_dict(1, {2: 1, 0: Fraction(-2, 3)})
    assert reconstruct_borel(tensor_coefficient(2, 1), 1, 4).format() == "beta*(J(2) - 2/3)"


def test_reconstruct_borel_errors():
    with pytest.raises(DegreeOverflow):
        reconstruct_borel(beta * J(5), 1, 3)
    with pytest.raises(WeightMismatch):
        reconstruct_borel(beta ** 2 * J(1), 1, 3)


def test_v1_support_structure():
    """Psi_k maps span{I_(2+-2j)} + span{I_(3+-2j) - I_(1+-2j)} into itself; Psi_1(I_3 + I_1) lands there too."""
    def in_v1(form):
        d = form.as_dict()
        odd = sum(v for e, v in d.items() if e % 2)
        return odd == 0  # even part is free; odd part must have coefficient sum zero
    for k in range(1, 5):
        assert in_v1(restrict_to_torus(apply_field(make_psi(k), I(2)), 2 + k))
        assert in_v1(restrict_to_torus(apply_field(make_psi(k), I(3) - I(1)), 3 + k))
    assert not in_v1(restrict_to_torus(I(3) + I(1), 3))
    image = restrict_to_torus(apply_field(make_psi(1), I(3) + I(1)), 4)
    assert not image.is_zero() and in_v1(image)


def test_json_and_formatting():
    form = restrict_to_torus(apply_field(make_psi(1), I(2)), 3)
    assert form.format("I") == "2*I(3) - 2*I(1)"
    assert form.to_json("I") == {"basis": "I", "coefficients": {"1": "-2", "3": "2"}}
    assert ClassForm.from_laurent({}).format() == "0"
    assert BorelForm(1, (Fraction(-2, 3), 0, 1)).to_json()["coefficients"] == {"0": "-2/3", "2": "1"}
