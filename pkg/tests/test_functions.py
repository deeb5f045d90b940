from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from conjfields.exact_core import Jet2
from conjfields.functions import I, J, beta_trace_monomial, beta, chi, tensor_coefficient
from conjfields.matrix_ring import SquareMatrix
from conjfields.sampling import torus_point


@pytest.mark.parametrize("m", range(0, 9))
def test_character_on_torus(m):
    x = Fraction(3, 2)
    assert chi(m)(torus_point(x)) == sum(x ** (m - 2 * i) for i in range(m + 1))


def test_character_minus_one_is_zero(sl2):
    assert chi(-1)(sl2[0]) == 0


@pytest.mark.parametrize("m", range(0, 7))
def test_character_matches_symmetric_power_trace(sl2, m):
    """Oracle: trace of the induced map on degree-m polynomials in (u, v), via sympy."""
    u, v = sympy.symbols("u v")
    g = sl2[1]
    a, b, c, d = (sympy.Rational(str(g[i, j])) for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))
    total = 0
    for k in range(m + 1):
        poly = sympy.Poly(sympy.expand((a * u + b * v) ** k * (c * u + d * v) ** (m - k)), u, v)
        total += poly.coeff_monomial(u ** k * v ** (m - k))
    assert chi(m)(g) == Fraction(str(total))


def test_trace_identities(sl2):
    for g in sl2:
        assert I(2)(g) == J(2)(g) - 2
        assert chi(3)(g) == J(3)(g) - 2 * J(1)(g)


def test_tensor_coefficient_at_identity():
    # at g = 1 every u^k coefficient is 1 when n = 0 and vanishes when m = 0 < n
    assert tensor_coefficient(0, 3)(SquareMatrix.identity(2)) == 0
    assert tensor_coefficient(2, 0)(SquareMatrix.identity(2)) == 3


def test_jmn_product(sl2):
    g = sl2[2]
    assert beta_trace_monomial(3, 2)(g) == g.trace() ** 3 * g[0, 1] ** 2


def test_ring_generic_evaluation():
    g = SquareMatrix([[Jet2(2, 1, 0, 0, 1), Fraction(1)], [Fraction(1), Fraction(1)]])
    val = (beta * I(2) + chi(2))(g)
    assert isinstance(val, Jet2)


def test_bad_indices():
    with pytest.raises(ValueError):
        J(-1)
    with pytest.raises(ValueError):
        chi(-2)
    with pytest.raises(ValueError):
        beta ** -1
