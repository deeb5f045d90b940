from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conjfields.fields import (ConstantMap, FieldMapSpec, InvariantCoefficient, StarMap,
                               apply_field, curvature_term, differential, eval_map, is_flat,
                               make_phi, make_psi, second_order, sharp_commutator,
                               star_commutator)
from conjfields.functions import Entry, I, J, beta, chi
from conjfields.matrix_ring import SquareMatrix
from conjfields.sampling import SamplePlan, sample_direction, sample_slg, slg_element, torus_point

U = SquareMatrix.from_rationals([[1, 1], [0, 1]])


def test_phi_examples(sl3):
    assert all(eval_map(make_phi(3, 0), g).is_zero() for g in sl3)
    assert eval_map(make_phi(2, 1), U) == SquareMatrix.from_rationals([[0, 1], [0, 0]])
    assert all(eval_map(make_phi(3, 2), g).trace() == 0 for g in sl3)


def test_psi_examples(sl2):
    x = Fraction(5, 3)
    assert eval_map(make_psi(1), torus_point(x)) == SquareMatrix.diag([x - 1 / x, 1 / x - x])
    assert eval_map(make_psi(1), U) == SquareMatrix.from_rationals([[0, 2], [0, 0]])
    for k in range(1, 6):
        for g in sl2:
            lhs = eval_map(make_psi(k + 1), g) - eval_map(make_psi(1), g).scale(chi(k)(g))
            assert lhs.is_zero()


def test_linearity(sl3):
    for g in sl3[:3]:
        assert eval_map(make_phi(3, 1) + make_phi(3, 2), g) == (
            eval_map(make_phi(3, 1), g) + eval_map(make_phi(3, 2), g))


def test_equivariance(plan):
    for n in (2, 3):
        for i in range(3):
            g, h = slg_element(plan, n, i), slg_element(plan, n, i + 5)
            for k in (-2, 1, 3):
                phi = make_phi(n, k)
                assert eval_map(phi, h * g * h.inverse()) == h * eval_map(phi, g) * h.inverse()


def test_differential_examples(sl3, plan):
    xs = sample_direction(plan, 3)
    for g, x in zip(sl3[:4], xs):
        assert differential(make_phi(3, 1), g, x) == x
    for k in range(-3, 4):
        for x in xs[:3]:
            assert differential(make_phi(3, k), SquareMatrix.identity(3), x) == x.scale(k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_differential_routes_agree(plan, n):
    for g, x in zip(sample_slg(plan, n), sample_direction(plan, n)):
        for k in range(-3, 4):
            phi = make_phi(n, k)
            assert differential(phi, g, x, "jet") == differential(phi, g, x, "closed")


def test_differential_with_class_coefficients(sl3, plan):
    phi = make_phi(3, 2).times(InvariantCoefficient.tr(1) * InvariantCoefficient.tr(-1) + 3)
    for g, x in zip(sl3[:4], sample_direction(plan, 3)):
        assert differential(phi, g, x, "jet") == differential(phi, g, x, "closed")


def test_star_examples(sl2, sl3):
    for g in sl2:
        assert star_commutator(make_psi(1), make_psi(1), g).is_zero()
        assert star_commutator(make_psi(1), make_psi(2), g) == (
            eval_map(make_psi(3), g) - eval_map(make_psi(1), g).scale(3))
    for g in sl3:
        want = (eval_map(make_phi(3, -1), g).scale(g.trace())
                + eval_map(make_phi(3, 1), g).scale(g.inverse().trace())).scale(Fraction(1, 3))
        assert star_commutator(make_phi(3, 1), make_phi(3, -1), g) == want


def test_sharp_examples(sl3):
    for y in sl3[:4]:
        assert sharp_commutator(make_phi(3, 2), make_phi(3, 2), y).is_zero()
        assert curvature_term(make_phi(3, 1), make_phi(3, -2), y).is_zero()


def test_apply_field_examples(sl2):
    for g in sl2:
        assert apply_field(make_psi(1), I(2), g) == 2 * (I(3)(g) - I(1)(g))
        assert apply_field(make_psi(1), J(3), g) == 3 * (J(4)(g) - 4 * J(2)(g))


def test_apply_field_kills_constants(sl2):
    from conjfields.functions import Const
    assert all(apply_field(make_psi(1), Const(7), g) == 0 for g in sl2)


def test_nested_and_mixed_second_order_agree(sl2):
    f = beta ** 2 * I(3) + Entry(1, 0)
    a, b = make_psi(1), make_psi(2)
    for g in sl2[:4]:
        assert apply_field(a, apply_field(b, f), g) == second_order(a, b, f, g)


def test_flatness_examples(sl2, plan):
    for n in (2, 3, 4):
        pts = sample_slg(plan, n)
        for k in range(-4, 5):
            assert is_flat(make_phi(n, k), pts)
    for k in range(1, 5):
        assert is_flat(make_psi(k), sl2)
    res = is_flat(ConstantMap(SquareMatrix.unit(2, 0, 1)), sl2)
    assert not res and res.witness == sl2[0]


def test_jacobi_for_psi(sl2):
    a, b, c = make_psi(1), make_psi(2), make_psi(3)
    for g in sl2[:3]:
        total = (StarMap(StarMap(a, b), c)(g) + StarMap(StarMap(b, c), a)(g)
                 + StarMap(StarMap(c, a), b)(g))
        assert total.is_zero()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 50), st.integers(-3, 3))
def test_differential_covariance(index, k):
    """d Phi at hgh^-1 in direction hXh^-1 is the conjugate of d Phi at g in direction X."""
    plan = SamplePlan(seed=7, count=1, height_bound=4)
    g, h = slg_element(plan, 3, index), slg_element(plan, 3, index + 100)
    x = sample_direction(SamplePlan(seed=index, count=1, height_bound=4), 3)[0]
    phi = make_phi(3, k)
    hi = h.inverse()
    assert differential(phi, h * g * hi, h * x * hi) == h * differential(phi, g, x) * hi


def test_psi_zero_and_negative_convention(sl2):
    zero = FieldMapSpec.build(2, [])
    for g in sl2[:3]:
        assert eval_map(zero, g).is_zero()
        assert eval_map(-make_psi(2), g) == eval_map(make_psi(2), g.inverse())
