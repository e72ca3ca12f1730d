import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dunkl_hermite.dunkl import GaussianDressed, gaussian_dirac
from dunkl_hermite.errors import UnsupportedGroupError
from dunkl_hermite.hermite import hermite_generate
from dunkl_hermite.integrate import inner_product_H, inner_product_H_full
from dunkl_hermite.monogenic import module_basis
from dunkl_hermite.multipoly import CPoly, x_poly
from dunkl_hermite.numeric import (MAX_ORDER, chebyshev_recurrence, eval_poly, gaussian_dressed_callable,
                                   generalized_hermite_beta, mc_inner_product, mc_pairings,
                                   numeric_dunkl_dirac, numeric_inner_product, quad_rule,
                                   required_order, tensor_supported, weight_moment_ratios)
from dunkl_hermite.reflection import build_group


def test_plain_two_point_rule():
    rule = quad_rule(0, 2)
    assert np.allclose(rule.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
    assert np.allclose(rule.weights, [math.sqrt(math.pi) / 2] * 2, rtol=1e-14)


def test_matches_numpy_gauss_hermite():
    for m in (5, 20, 40):
        x, w = np.polynomial.hermite.hermgauss(m)
        rule = quad_rule(0, m)
        assert np.allclose(rule.nodes, x, atol=1e-12)
        assert np.allclose(rule.weights, w, rtol=1e-10, atol=1e-300)


@pytest.mark.parametrize("kappa", [F(1, 2), F(1, 3), F(3, 2), 2])
@pytest.mark.parametrize("m", [1, 4, 16, MAX_ORDER])
def test_moments_exact(kappa, m):
    rule = quad_rule(kappa, m)
    k = float(kappa)
    assert np.all(rule.weights > 0)
    assert np.allclose(rule.nodes, -rule.nodes[::-1], atol=0)
    for j in range(0, 2 * m, 2):
        # int |t|^{2k} t^j e^{-t^2} dt = Gamma(k + (j + 1)/2)
        want = math.exp(math.lgamma(k + (j + 1) / 2))
        assert rule.integrate(rule.nodes ** j) == pytest.approx(want, rel=1e-12)
        assert abs(rule.integrate(rule.nodes ** (j + 1))) < 1e-12 * want


def test_half_kappa_example():
    assert quad_rule(F(1, 2), 3).integrate(np.ones(3)) == pytest.approx(1.0, rel=1e-14)


def test_bad_orders():
    with pytest.raises(ValueError):
        quad_rule(0, 0)
    with pytest.raises(ValueError):
        quad_rule(0, MAX_ORDER + 1)
    with pytest.raises(ValueError):
        quad_rule(-1, 3)


def test_recurrence_closed_form():
    for kappa in (F(0), F(1, 3), F(5, 2)):
        _, beta = chebyshev_recurrence(weight_moment_ratios(kappa, 20), 9)
        for k in range(1, 9):
            assert beta[k] == generalized_hermite_beta(kappa, k)
    assert generalized_hermite_beta(F(1, 3), 1) == F(5, 6)
    assert generalized_hermite_beta(F(1, 3), 2) == 1


def test_eval_examples(z2_small):
    pn = module_basis(z2_small, 1).elements[0]
    h1 = hermite_generate(z2_small, CPoly.constant(1, 2), 1).polys[1]
    assert np.allclose(eval_poly(h1, [1, 0]), [0, -2, 0, 0])
    assert np.allclose(eval_poly(x_poly(2), [3, 4]), [0, 3, 4, 0])
    assert eval_poly(pn, [0.3, -0.2]).shape == (4,)


def test_tensor_matches_exact(z2_small, z2_three):
    for rd in (z2_small, z2_three):
        for n in (0, 2):
            pn = module_basis(rd, n).elements[0]
            fam = hermite_generate(rd, pn, 5)
            for s in range(6):
                for t in range(s, 6):
                    f, g = fam.polys[s], fam.polys[t]
                    exact = inner_product_H(rd, f, g).evaluate()
                    got = numeric_inner_product(rd, f, g)
                    scale = math.sqrt(inner_product_H(rd, f, f).evaluate() * inner_product_H(rd, g, g).evaluate())
                    assert abs(got - exact) <= 1e-10 * scale


def test_full_pairing_numeric(z2_three):
    f = x_poly(3) * CPoly.variable(3, 2)
    g = module_basis(z2_three, 2).elements[0]
    full = numeric_inner_product(z2_three, f, g, full=True)
    exact = inner_product_H_full(z2_three, f, g)
    for mask in range(8):
        want = exact[mask].evaluate() if mask in exact else 0.0
        assert full[mask] == pytest.approx(want, abs=1e-11)


def test_order_validation(z2_small):
    f = x_poly(2) ** 4
    need = required_order(z2_small, f, f)
    assert need == 5
    with pytest.raises(ValueError):
        numeric_inner_product(z2_small, f, f, m=need - 1)


def test_integer_kappa_tensor_on_a2(a2):
    assert tensor_supported(a2)
    assert not tensor_supported(build_group("A", 3, F(1, 2)))
    with pytest.raises(UnsupportedGroupError):
        required_order(build_group("A", 3, F(1, 2)), CPoly.constant(1, 3), CPoly.constant(1, 3))
    pn = module_basis(a2, 1).elements[0]
    fam = hermite_generate(a2, pn, 4)
    g = [[numeric_inner_product(a2, fam.polys[s], fam.polys[t]) for t in range(5)] for s in range(5)]
    for s in range(5):
        assert g[s][s] > 0
        for t in range(s + 1, 5):
            assert abs(g[s][t]) <= 1e-10 * math.sqrt(g[s][s] * g[t][t])
    # norm ratios follow C(s): (H_s, H_s) = C(s) (H_{s-1}, H_{s-1})
    assert g[2][2] / g[1][1] == pytest.approx(4, rel=1e-10)
    assert g[1][1] / g[0][0] == pytest.approx(2 * (a2.mu + 2), rel=1e-10)


def test_mc_against_tensor(a2):
    pn = module_basis(a2, 1).elements[0]
    fam = hermite_generate(a2, pn, 2)
    exact = numeric_inner_product(a2, fam.polys[2], fam.polys[2])
    est = mc_inner_product(a2, fam.polys[2], fam.polys[2], 100_000, seed=7)
    assert abs(est.value - exact) <= 4 * est.abs_err_estimate
    assert est.abs_err_estimate < 0.05 * exact
    assert est.to_json() == {"value": est.value, "abs_err_estimate": est.abs_err_estimate}


def test_mc_is_deterministic(a2):
    polys = [CPoly.constant(1, 3), x_poly(3)]
    v1, e1 = mc_pairings(a2, polys, 5000, seed=3)
    v2, e2 = mc_pairings(a2, polys, 5000, seed=3, chunk=1000)
    assert np.array_equal(v1, v1.T)
    assert v1 == pytest.approx(v2, rel=0.1)
    with pytest.raises(ValueError):
        mc_pairings(a2, polys, 1, seed=0)


def test_mc_error_bars_are_calibrated():
    # non-integer kappa: no exact reference, so use the exact zero (1, x_1)
    rd = build_group("B", 2, [F(1, 2), F(1, 3)])
    zs = []
    for seed in range(20):
        est = mc_inner_product(rd, CPoly.constant(1, 2), CPoly.variable(2, 1), 4000, seed)
        zs.append(est.value / est.abs_err_estimate)
    zs = np.array(zs)
    assert np.all(np.abs(zs) < 5)
    assert 0.4 < zs.std() < 2.0


points = st.tuples(*[st.floats(-1.5, 1.5) for _ in range(3)]).filter(
    lambda x: min(abs(x[0] - x[1]), abs(x[0] - x[2]), abs(x[1] - x[2])) > 0.1)


@given(points)
def test_finite_difference_oracle(x):
    rd = build_group("A", 3, F(1, 2))
    pn = module_basis(rd, 2).elements[1]
    f = x_poly(3) * pn + CPoly.variable(3, 1) ** 2
    exact = gaussian_dirac(rd, GaussianDressed(f)).poly
    want = eval_poly(exact, x) * math.exp(-sum(v * v for v in x))
    got = numeric_dunkl_dirac(rd, gaussian_dressed_callable(f), x)
    assert np.allclose(got, want, atol=1e-6)


def test_finite_difference_rejects_mirror(a2):
    with pytest.raises(ValueError):
        numeric_dunkl_dirac(a2, gaussian_dressed_callable(CPoly.constant(1, 3)), [1.0, 1.0, 0.0])
