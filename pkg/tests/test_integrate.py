from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from dunkl_hermite.errors import UnsupportedGroupError
from dunkl_hermite.gammaexpr import GammaExpr
from dunkl_hermite.hermite import c_coefficient, hermite_generate
from dunkl_hermite.integrate import (adjoint_check, gamma_closed_form, gamma_norm,
                                     gaussian_moment_Z2, inner_product_H, inner_product_H_full,
                                     radial_pairing_closed_form, sphere_area, sphere_norm_sq,
                                     sphere_pairing, sphere_weight_mass)
from dunkl_hermite.monogenic import module_basis
from dunkl_hermite.multipoly import CPoly, monomials, x_power, x_poly
from dunkl_hermite.reflection import build_group


def test_one_dimensional_moments():
    rd = build_group("Z2^d", 1, F(1, 2))
    t = CPoly.variable(1, 1)
    assert gaussian_moment_Z2(rd, CPoly.constant(1, 1)) == {0: GammaExpr.rational(1)}
    assert gaussian_moment_Z2(rd, t) == {}
    assert gaussian_moment_Z2(rd, t * t) == {0: GammaExpr.gamma(2)}


@pytest.mark.parametrize("beta", [(0, 0), (2, 0), (2, 4), (6, 2)])
def test_moments_against_quadrature(beta):
    # independent oracle: mpmath integration of each axis factor
    kappa = (F(1, 2), F(1, 3))
    rd = build_group("Z2^d", 2, list(kappa))
    got = gaussian_moment_Z2(rd, CPoly.monomial(beta))[0].evaluate()
    want = 1.0
    for k, b in zip(kappa, beta):
        want *= float(2 * mpmath.quad(lambda t: t ** (b + 2 * float(k)) * mpmath.exp(-t * t), [0, mpmath.inf]))
    assert got == pytest.approx(want, rel=1e-12)


def test_radial_pairing_examples(z2_small):
    rd = z2_small
    pn = module_basis(rd, 1).elements[0]
    xp = x_poly(2) * pn
    assert inner_product_H(rd, pn, xp).is_zero()
    ratio = inner_product_H(rd, xp, xp).ratio(inner_product_H(rd, pn, pn))
    assert ratio == 1 + rd.mu / 2
    assert inner_product_H(rd, pn, pn).ratio(inner_product_H(rd, pn, pn)) == 1


def test_radial_pairing_closed_form_examples():
    norm = GammaExpr.gamma(F(1, 3))
    mu, n = F(11, 3), 1
    assert radial_pairing_closed_form(0, 0, n, mu, norm) == GammaExpr.gamma((2 * n + mu) / 2, c=F(1, 2)) * norm
    assert radial_pairing_closed_form(0, 1, n, mu, norm).is_zero()
    assert radial_pairing_closed_form(1, 1, n, mu, norm) == GammaExpr.gamma((2 + 2 * n + mu) / 2, c=F(1, 2)) * norm


@pytest.mark.parametrize("group", ["z2_small", "z2_three"])
def test_radial_pairing_table_matches_integration(group, request):
    rd = request.getfixturevalue(group)
    for n in (0, 1, 2):
        for pn in module_basis(rd, n).elements:
            norm = sphere_norm_sq(rd, pn)
            for s in range(5):
                for t in range(5):
                    got = inner_product_H(rd, x_power(rd.d, s) * pn, x_power(rd.d, t) * pn)
                    assert got == radial_pairing_closed_form(s, t, n, rd.mu, norm)


def test_adjointness_examples(z2_small):
    rd = z2_small
    pn = module_basis(rd, 2).elements[0]
    for s in range(3):
        for t in range(2):
            p = [0] * (2 * s) + [1]
            q = [0] * (2 * t + 1) + [1]
            assert adjoint_check(rd, p, q, pn)
            assert adjoint_check(rd, q, p, pn)
    assert adjoint_check(rd, [1], [1], pn)
    assert adjoint_check(rd, [F(1, 2), -3, 0, F(2, 7), 1], [2, F(-1, 3), 5], pn)


def test_gamma_norm_examples(z2_small):
    rd = z2_small
    d = rd.d
    for n in (0, 1):
        pn = module_basis(rd, n).elements[0]
        fam = hermite_generate(rd, pn, 2)
        g0 = gamma_norm(rd, fam.polys[0], pn)
        assert g0 == GammaExpr.monomial(1, d, [(rd.mu / 2 + n, 1), (F(d, 2), -1)])
        g1 = gamma_norm(rd, fam.polys[1], pn)
        assert g1 == g0 * c_coefficient(1, rd.mu, n)
        assert g1 == gamma_closed_form(1, rd.mu, n, d)


def test_normalisation_conventions(z2_three):
    rd = z2_three
    pn = module_basis(rd, 2).elements[1]
    h = hermite_generate(rd, pn, 3).polys[3]
    avg = gamma_norm(rd, h, pn, convention="average")
    total = gamma_norm(rd, h, pn, convention="total")
    assert avg == gamma_closed_form(3, rd.mu, 2, 3)
    assert total != avg
    assert total * sphere_area(3) == avg
    with pytest.raises(ValueError):
        gamma_norm(rd, h, pn, convention="other")


def test_weight_mass(z2_small, z2_three):
    for rd in (z2_small, z2_three):
        assert sphere_norm_sq(rd, CPoly.constant(1, rd.d)) == sphere_weight_mass(rd)
    assert sphere_norm_sq(z2_small, CPoly.constant(1, 2)) == GammaExpr.rational(F(12, 5))


def test_distinct_degree_monogenics_are_orthogonal(z2_three):
    p1 = module_basis(z2_three, 1).elements[0]
    p2 = module_basis(z2_three, 2).elements[0]
    assert sphere_pairing(z2_three, p1, p2).is_zero()


def test_unsupported_group(a2):
    with pytest.raises(UnsupportedGroupError):
        inner_product_H(a2, CPoly.constant(1, 3), CPoly.constant(1, 3))


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def small_polys(draw):
    monos = [m for k in range(4) for m in monomials(2, k)]
    terms = draw(st.lists(st.tuples(st.sampled_from(monos), st.integers(0, 3), rationals), min_size=1, max_size=5))
    return CPoly(2, {(b, m): c for b, m, c in terms})


@given(small_polys(), small_polys())
def test_pairing_symmetry_and_positivity(f, g):
    rd = build_group("Z2^d", 2, [F(1, 2), F(1, 3)])
    assert inner_product_H(rd, f, g) == inner_product_H(rd, g, f)
    full = inner_product_H_full(rd, f, g)
    assert full.get(0, GammaExpr.zero()) == inner_product_H(rd, f, g)
    if not f.is_zero():
        assert inner_product_H(rd, f, f).evaluate() > 0
