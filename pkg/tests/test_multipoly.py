from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dunkl_hermite.clifford import Multivector
from dunkl_hermite.errors import DecompositionError, DimensionMismatch
from dunkl_hermite.multipoly import (CPoly, divide_by_linear_form, from_radial, linear_form,
                                     monomials, poly_divided_difference, poly_reflect,
                                     r_squared, radial_decompose, x_power, x_poly)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def var(d, i):
    return CPoly.variable(d, i)


@st.composite
def cpolys(draw, d=3, max_deg=4):
    terms = draw(st.lists(st.tuples(st.integers(0, max_deg), st.integers(0, len(monomials(d, max_deg)) - 1),
                                    st.integers(0, (1 << d) - 1), rationals), max_size=6))
    coeffs = {}
    for deg, idx, mask, c in terms:
        monos = monomials(d, deg)
        coeffs[(monos[idx % len(monos)], mask)] = c
    return CPoly(d, coeffs)


roots = st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any)


def test_products_with_generators():
    e1x1 = CPoly.monomial((1, 0), Multivector.basis(2, 1))
    assert e1x1 * e1x1 == CPoly.monomial((2, 0), -1)
    assert x_poly(3) * x_poly(3) == -r_squared(3)
    p = var(2, 1) * var(2, 2) + CPoly.constant(3, 2)
    assert CPoly.constant(1, 2) * p == p


def test_reflect_examples():
    x1 = var(3, 1)
    assert poly_reflect(x1 * x1, (1, 0, 0)) == x1 * x1
    assert poly_reflect(x1, (1, 0, 0)) == -x1
    assert poly_reflect(x1, (1, -1, 0)) == var(3, 2)


def test_divided_difference_examples():
    x1 = var(2, 1)
    assert poly_divided_difference(x1 * x1, (1, 0)).is_zero()
    assert poly_divided_difference(x1, (1, 0)) == CPoly.constant(2, 2)
    assert poly_divided_difference(x1 ** 3, (1, 0)) == (x1 * x1).scale(2)


def test_divide_by_linear_form():
    a = (1, -1, 0)
    p = linear_form(a) * (var(3, 1) + var(3, 3) ** 2)
    assert divide_by_linear_form(p, a) == var(3, 1) + var(3, 3) ** 2


def test_x_powers():
    assert x_power(2, 0) == CPoly.constant(1, 2)
    assert x_power(2, 2) == -r_squared(2)
    assert x_power(3, 3) == x_poly(3) * x_poly(3) * x_poly(3)


def test_radial_decompose_examples():
    # H_2 with P_0 = 1 and mu = 11/3
    pn = CPoly.constant(1, 2)
    mu = F(11, 3)
    h2 = (x_power(2, 2).scale(4) + CPoly.constant(2 * mu, 2))
    assert radial_decompose(h2, pn) == [2 * mu, 0, 4]
    assert radial_decompose(pn, pn) == [1]
    assert radial_decompose(x_poly(2).scale(-2), pn) == [0, -2]
    with pytest.raises(DecompositionError):
        radial_decompose(var(2, 1), pn)


def test_json_round_trip():
    p = CPoly.monomial((2, 1), Multivector.basis(2, 1, 2) * F(-3, 5)) + CPoly.constant(7, 2)
    assert CPoly.from_json(p.to_json()) == p


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        var(2, 1) + var(3, 1)


def test_degree_helpers():
    p = var(3, 1) ** 3 + var(3, 2)
    assert p.degree() == 3
    assert p.degrees() == {1, 3}
    assert not p.is_homogeneous()
    assert p.max_axis_degree() == (3, 1, 0)
    assert p.homogeneous_part(1) == var(3, 2)


@given(cpolys(), roots)
def test_divided_difference_reconstructs(p, alpha):
    dd = poly_divided_difference(p, alpha)
    assert linear_form(alpha) * dd + poly_reflect(p, alpha) == p


@given(cpolys(), roots)
def test_reflection_is_degree_preserving_involution(p, alpha):
    q = poly_reflect(p, alpha)
    assert poly_reflect(q, alpha) == p
    assert q.degrees() == p.degrees()


@given(cpolys(), roots, st.sampled_from([F(2), F(-1, 3), F(5, 2)]))
def test_dunkl_summand_scale_invariant(p, alpha, c):
    scaled = tuple(c * a for a in alpha)
    for i in range(3):
        lhs = poly_divided_difference(p, alpha).scale(alpha[i])
        rhs = poly_divided_difference(p, scaled).scale(scaled[i])
        assert lhs == rhs


@given(cpolys(max_deg=3), cpolys(max_deg=3), cpolys(max_deg=2))
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


@given(st.lists(rationals, min_size=1, max_size=5))
def test_radial_round_trip(coeffs):
    pn = CPoly.monomial((1, 0), Multivector.basis(2, 2)) - CPoly.monomial((0, 1), Multivector.basis(2, 1))
    p = from_radial(coeffs, pn)
    trimmed = list(coeffs)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert radial_decompose(p, pn) == trimmed
