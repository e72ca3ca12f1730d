from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dunkl_hermite.clifford import Multivector
from dunkl_hermite.dunkl import (GaussianDressed, d_plus, dunkl_dirac, dunkl_laplacian, dunkl_T,
                                 gamma_sph, gaussian_dirac, phi_omega, rodrigues, spherical_residual)
from dunkl_hermite.monogenic import module_basis
from dunkl_hermite.multipoly import CPoly, monomials, r_squared, x_power, x_poly
from dunkl_hermite.reflection import build_group

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def homogeneous(draw, d, deg):
    monos = monomials(d, deg)
    terms = draw(st.lists(st.tuples(st.sampled_from(monos), st.integers(0, (1 << d) - 1), rationals),
                          min_size=1, max_size=4))
    return CPoly(d, {(b, m): c for b, m, c in terms})


def test_T_examples(z2_small):
    x1, x2 = CPoly.variable(2, 1), CPoly.variable(2, 2)
    assert dunkl_T(z2_small, 1, x1) == CPoly.constant(2, 2)
    assert dunkl_T(z2_small, 1, x2).is_zero()


@pytest.mark.parametrize("k", range(7))
def test_one_dimensional_oracle(k):
    # classical rank-one Dunkl operator: T t^k = (k + 2 kappa [k odd]) t^(k-1)
    kappa = F(2, 5)
    rd = build_group("Z2^d", 1, kappa)
    t = CPoly.variable(1, 1)
    want = (t ** (k - 1)).scale(k + (2 * kappa if k % 2 else 0)) if k else CPoly.zero(1)
    assert dunkl_T(rd, 1, t ** k) == want


def test_zero_multiplicity_is_partial_derivative():
    rd = build_group("A", 3, 0, allow_zero=True)
    f = CPoly.variable(3, 1) ** 2 * CPoly.variable(3, 3) + CPoly.variable(3, 2) ** 3
    for i in range(1, 4):
        assert dunkl_T(rd, i, f) == f.diff(i)


@pytest.mark.parametrize("group", ["z2_small", "z2_three", "a2"])
def test_dirac_on_radial_powers(group, request):
    rd = request.getfixturevalue(group)
    d = rd.d
    assert dunkl_dirac(rd, x_poly(d)) == CPoly.constant(-rd.mu, d)
    assert dunkl_dirac(rd, x_power(d, 2)) == x_poly(d).scale(-2)
    assert dunkl_dirac(rd, CPoly.constant(1, d)).is_zero()


@pytest.mark.parametrize("group", ["z2_small", "a2"])
def test_laplacian_examples(group, request):
    rd = request.getfixturevalue(group)
    d = rd.d
    # sum T_i^2 (sum x_j^2) = 2 mu
    assert dunkl_laplacian(rd, r_squared(d)) == CPoly.constant(2 * rd.mu, d)
    assert dunkl_laplacian(rd, CPoly.variable(d, 1)).is_zero()
    for n in (1, 2):
        for p in module_basis(rd, n).elements:
            assert dunkl_laplacian(rd, p).is_zero()
            # x P_n is Dunkl-harmonic
            assert dunkl_laplacian(rd, x_poly(d) * p).is_zero()


def test_d_plus_examples(z2_small):
    rd = z2_small
    pn = module_basis(rd, 1).elements[0]
    h1 = d_plus(rd, pn)
    assert h1 == (x_poly(2) * pn).scale(-2)
    h2 = (x_power(2, 2).scale(4) + CPoly.constant(2 * (rd.mu + 2), 2)) * pn
    assert d_plus(rd, h1) == h2
    assert d_plus(rd, CPoly.zero(2)).is_zero()


def test_gamma_examples(z2_three):
    rd = z2_three
    d = rd.d
    assert gamma_sph(rd, r_squared(d)).is_zero()
    for n in (0, 1, 2):
        for p in module_basis(rd, n).elements:
            assert gamma_sph(rd, p) == p.scale(-n)
            xp = x_poly(d) * p
            assert gamma_sph(rd, xp) == xp.scale(rd.mu + n - 1)


def test_phi_omega_kills_radial():
    assert phi_omega(r_squared(3)).is_zero()


def test_gaussian_dirac_examples(a2):
    pn = module_basis(a2, 1).elements[0]
    one = gaussian_dirac(a2, GaussianDressed(pn))
    assert one.poly == (x_poly(3) * pn).scale(-2)
    assert gaussian_dirac(a2, GaussianDressed(CPoly.zero(3))).poly.is_zero()
    h = pn
    for s in range(1, 4):
        h = d_plus(a2, h)
        assert rodrigues(a2, pn, s) == h


@pytest.mark.parametrize("family,size,kappa", [("Z2^d", 2, [F(1, 2), F(1, 3)]), ("A", 3, [F(1, 2)]),
                                               ("B", 2, [F(1, 3), 2])])
@given(data=st.data())
def test_dunkl_operators_commute(family, size, kappa, data):
    rd = build_group(family, size, kappa)
    f = data.draw(homogeneous(rd.d, data.draw(st.integers(0, 4))))
    for i in range(1, rd.d + 1):
        for j in range(i + 1, rd.d + 1):
            assert dunkl_T(rd, i, dunkl_T(rd, j, f)) == dunkl_T(rd, j, dunkl_T(rd, i, f))


@pytest.mark.parametrize("family,size,kappa", [("Z2^d", 3, [F(3, 2), F(1, 2), 1]), ("A", 3, [1]),
                                               ("I2", 4, [F(1, 2), F(1, 5)])])
@given(data=st.data())
def test_spherical_identity_and_factorisation(family, size, kappa, data):
    rd = build_group(family, size, kappa)
    f = data.draw(homogeneous(rd.d, data.draw(st.integers(0, 4))))
    assert spherical_residual(rd, f).is_zero()
    # check=True raises if sum T_i^2 differs from -D_h^2
    dunkl_laplacian(rd, f, check=True)


def test_dirac_is_left_linear_over_constants(z2_small):
    f = CPoly.variable(2, 1) ** 3 * CPoly.variable(2, 2)
    a = Multivector.basis(2, 1, 2) + Multivector.scalar(2, 3)
    # D_h acts from the left, so right multiplication commutes with it
    assert dunkl_dirac(z2_small, f.right_mul(a)) == dunkl_dirac(z2_small, f).right_mul(a)
