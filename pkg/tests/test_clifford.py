from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dunkl_hermite.clifford import (Multivector, blade_product, conjugate, conjugation_sign,
                                    format_rational, geometric_product, parse_rational,
                                    reflect_clifford, reflect_vector, vector_inverse)
from dunkl_hermite.errors import DimensionMismatch

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def multivectors(draw, d=3):
    coeffs = draw(st.lists(rationals, min_size=1 << d, max_size=1 << d))
    return Multivector(d, dict(enumerate(coeffs)))


@st.composite
def vectors(draw, d=3, nonzero=True):
    comps = draw(st.lists(rationals, min_size=d, max_size=d))
    if nonzero and not any(comps):
        comps[0] = F(1)
    return comps


def e(d, *idx):
    return Multivector.basis(d, *idx)


def test_generators_square_to_minus_one():
    assert e(2, 1) * e(2, 1) == Multivector.scalar(2, -1)


def test_anticommutation():
    e12 = e(2, 1, 2)
    assert e(2, 1) * e(2, 2) == e12
    assert e(2, 2) * e(2, 1) == -e12


def test_vector_square():
    v = e(2, 1) + e(2, 2)
    assert v * v == Multivector.scalar(2, -2)


def test_blade_product_sign_table():
    # e1 e2 e1 = -e1 e1 e2 = e2
    s, m = blade_product(0b01, 0b11)
    assert (s, m) == (-1, 0b10)
    assert blade_product(0b11, 0b11) == (-1, 0)


def test_conjugation():
    assert conjugate(Multivector.scalar(2, 1)) == Multivector.scalar(2, 1)
    assert conjugate(e(2, 1)) == -e(2, 1)
    assert conjugate(e(2, 1, 2)) == -e(2, 1, 2)
    assert [conjugation_sign(m) for m in (0, 1, 3, 7)] == [1, -1, -1, 1]


def test_vector_inverse():
    assert vector_inverse(e(2, 1)) == -e(2, 1)
    # -x/|x|^2 = -2e1/4; the product is the oracle
    assert vector_inverse(e(2, 1) * 2) == e(2, 1) * F(-1, 2)
    assert (e(2, 1) * 2) * vector_inverse(e(2, 1) * 2) == Multivector.scalar(2, 1)
    v = e(2, 1) + e(2, 2)
    assert vector_inverse(v) == v * F(-1, 2)
    with pytest.raises(ZeroDivisionError):
        vector_inverse(Multivector(2))
    with pytest.raises(ValueError):
        vector_inverse(e(2, 1, 2))


def test_reflect_vector_examples():
    assert reflect_vector((1, 2), (1, 0)) == (-1, 2)
    assert reflect_vector((1, -1), (1, -1)) == (-1, 1)
    assert reflect_vector((1, 1), (1, -1)) == (1, 1)
    with pytest.raises(ValueError):
        reflect_vector((1, 1), (0, 0))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        e(2, 1) + e(3, 1)


def test_rationals_only():
    assert parse_rational("3/4") == F(3, 4)
    assert format_rational(F(-3, 4)) == "-3/4"
    assert format_rational(F(2)) == "2"
    with pytest.raises((TypeError, ValueError)):
        parse_rational(0.5)
    with pytest.raises((TypeError, ValueError)):
        parse_rational("0.5")


def test_json_round_trip():
    a = e(3, 1, 3) * F(2, 7) + Multivector.scalar(3, -1)
    assert Multivector.from_json(a.to_json()) == a


@given(multivectors(), multivectors(), multivectors())
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(multivectors(), multivectors())
def test_conjugate_is_anti_involution(a, b):
    assert conjugate(a * b) == conjugate(b) * conjugate(a)
    assert conjugate(conjugate(a)) == a


@given(multivectors(), multivectors())
def test_scalar_pairing_is_dot_product(a, b):
    dot = sum((a[m] * b[m] for m in range(8)), F(0))
    assert geometric_product(conjugate(a), b).scalar_part() == dot


@given(vectors())
def test_vector_square_and_inverse(x):
    v = Multivector.vector(x)
    n2 = sum(c * c for c in x)
    assert v * v == Multivector.scalar(3, -n2)
    assert vector_inverse(v) * v == Multivector.scalar(3, 1)


@given(vectors(nonzero=False), vectors())
def test_reflection_forms_agree(x, alpha):
    y = reflect_vector(x, alpha)
    assert reflect_vector(y, alpha) == tuple(F(c) for c in x)
    assert sum(c * c for c in y) == sum(c * c for c in x)
    cl = reflect_clifford(Multivector.vector(x), Multivector.vector(alpha))
    assert cl.vector_components() == y
