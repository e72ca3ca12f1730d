from fractions import Fraction as F
from math import comb

import pytest

from dunkl_hermite.clifford import Multivector
from dunkl_hermite.dunkl import dunkl_dirac
from dunkl_hermite.errors import UnsupportedGroupError
from dunkl_hermite.gammaexpr import GammaExpr
from dunkl_hermite.integrate import sphere_pairing
from dunkl_hermite.monogenic import expected_rank, module_basis, monogenic_kernel, orthonormalize_Z2
from dunkl_hermite.multipoly import CPoly, x_poly
from dunkl_hermite.reflection import build_group


def test_degree_one_example(z2_small):
    e1, e2 = Multivector.basis(2, 1), Multivector.basis(2, 2)
    p = CPoly.monomial((1, 0), e1 * F(-5, 3)) + CPoly.monomial((0, 1), e2 * 2)
    assert dunkl_dirac(z2_small, p).is_zero()


def test_expected_rank_table():
    assert [expected_rank(n, 2) for n in range(5)] == [1] * 5
    assert [expected_rank(n, 3) for n in range(5)] == [1, 2, 3, 4, 5]
    assert expected_rank(2, 4) == comb(4, 2)


@pytest.mark.parametrize("group", ["z2_small", "z2_int", "z2_three", "a2"])
def test_rank_and_freeness(group, request):
    rd = request.getfixturevalue(group)
    for n in range(4):
        b = module_basis(rd, n)
        assert b.rank_matches and b.free
        assert b.kernel_dim == (1 << rd.d) * expected_rank(n, rd.d)
        for p in b.elements:
            assert p.is_homogeneous() and p.degree() == n
            assert dunkl_dirac(rd, p).is_zero()
            assert not dunkl_dirac(rd, x_poly(rd.d) * p).is_zero()


def test_constants_are_the_degree_zero_kernel(z2_three):
    kernel = monogenic_kernel(z2_three, 0)
    assert len(kernel) == 8
    assert all(p.degree() == 0 for p in kernel)


def test_other_families():
    for rd in (build_group("B", 2, [F(1, 2), 1]), build_group("I2", 3, F(1, 3))):
        for n in range(3):
            assert module_basis(rd, n).rank_matches


def test_orthonormalisation(z2_three):
    for n in (1, 2, 3):
        b = orthonormalize_Z2(module_basis(z2_three, n))
        assert b.orthogonalized
        for i, row in enumerate(b.gram):
            for j, v in enumerate(row):
                if i == j:
                    assert v == b.norms[i] and v.evaluate() > 0
                else:
                    assert v.is_zero()


def test_orthonormalisation_needs_z2(a2):
    with pytest.raises(UnsupportedGroupError):
        orthonormalize_Z2(module_basis(a2, 1))


def test_right_multiplication_by_blades_keeps_norm(z2_small):
    p = module_basis(z2_small, 2).elements[0]
    base = sphere_pairing(z2_small, p, p)
    for mask in range(4):
        q = p.right_mul(Multivector.blade(2, mask))
        assert sphere_pairing(z2_small, q, q) == base
    assert base != GammaExpr.zero()
