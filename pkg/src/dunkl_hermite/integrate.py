"""
Exact Gaussian-Dunkl inner products for the group Z2^d.

For W = Z2^d the weight factorises, and each axis contributes

    int |t|^(b + 2k) e^(-t^2) dt = Gamma((b + 2k + 1)/2)     (b even, else 0),

so every integral is a rational multiple of prod_i Gamma(k_i + 1/2).  The inner
product is

    (f, g)_H = int conj(f(x)) g(x) e^(-|x|^2) h_k(x)^2 dx,

and the scalar part is what :func:`inner_product_H` returns.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from .clifford import blade_product, conjugation_sign
from .dunkl import d_plus, dunkl_dirac
from .errors import UnsupportedGroupError
from .gammaexpr import GammaExpr, gamma_ratio
from .multipoly import CPoly, from_radial
from .reflection import ReflectionData


def _require_z2(rd: ReflectionData) -> Tuple[Fraction, ...]:
    if not rd.is_z2:
        raise UnsupportedGroupError(
            f"exact integration is only available for Z2^d, not {rd.family}; use the numeric module")
    return rd.axis_kappa()


@lru_cache(maxsize=None)
def _axis_factor(kappa: Fraction, e: int) -> Fraction:
    """Gamma((e + 2 kappa + 1)/2) / Gamma(kappa + 1/2); zero for odd e."""
    if e % 2:
        return Fraction(0)
    out = Fraction(1)
    base = kappa + Fraction(1, 2)
    for j in range(e // 2):
        out *= base + j
    return out


def base_constant(rd: ReflectionData) -> GammaExpr:
    """prod_i Gamma(kappa_i + 1/2), the common transcendental factor."""
    kap = _require_z2(rd)
    return GammaExpr.monomial(1, 0, [(k + Fraction(1, 2), 1) for k in kap])


def _moment(kap: Tuple[Fraction, ...], beta) -> Fraction:
    out = Fraction(1)
    for k, e in zip(kap, beta):
        if e % 2:
            return Fraction(0)
        out *= _axis_factor(k, e)
    return out


def gaussian_moment_Z2(rd: ReflectionData, q: CPoly) -> Dict[int, GammaExpr]:
    """Blade-wise integral of q(x) e^{-|x|^2} h_k(x)^2 over R^d."""
    kap = _require_z2(rd)
    acc: Dict[int, Fraction] = defaultdict(Fraction)
    for (beta, mask), c in q.items():
        m = _moment(kap, beta)
        if m:
            acc[mask] += c * m
    base = base_constant(rd)
    return {mask: base * v for mask, v in sorted(acc.items()) if v}


def _parity(beta) -> Tuple[int, ...]:
    return tuple(e & 1 for e in beta)


def _by_blade(f: CPoly) -> Dict[int, Dict[tuple, list]]:
    """mask -> parity class -> [(exponent, coeff)]"""
    out: Dict[int, Dict[tuple, list]] = defaultdict(lambda: defaultdict(list))
    for (beta, mask), c in f.items():
        out[mask][_parity(beta)].append((beta, c))
    return out


def _pair_components(kap, fa: Dict[tuple, list], gb: Dict[tuple, list]) -> Fraction:
    """int f_A g_B e^{-|x|^2} h^2 / base for scalar component polynomials."""
    total = Fraction(0)
    cache: Dict[tuple, Fraction] = {}
    for par, flist in fa.items():
        glist = gb.get(par)
        if not glist:
            continue
        for b1, c1 in flist:
            for b2, c2 in glist:
                s = tuple(x + y for x, y in zip(b1, b2))
                m = cache.get(s)
                if m is None:
                    m = cache[s] = _moment(kap, s)
                total += c1 * c2 * m
    return total


def _scalar_pairing_rational(rd: ReflectionData, f: CPoly, g: CPoly) -> Fraction:
    kap = _require_z2(rd)
    fb, gb = _by_blade(f), _by_blade(g)
    # sc[conj(e_A) e_B] = delta_AB
    return sum((_pair_components(kap, fb[m], gb[m]) for m in fb if m in gb), Fraction(0))


def inner_product_H(rd: ReflectionData, f: CPoly, g: CPoly) -> GammaExpr:
    """Scalar part of (f, g)_H as an exact GammaExpr."""
    r = _scalar_pairing_rational(rd, f, g)
    return base_constant(rd) * r if r else GammaExpr.zero()


def inner_product_H_full(rd: ReflectionData, f: CPoly, g: CPoly) -> Dict[int, GammaExpr]:
    """Clifford-valued (f, g)_H, returned blade mask -> GammaExpr."""
    kap = _require_z2(rd)
    fb, gb = _by_blade(f), _by_blade(g)
    acc: Dict[int, Fraction] = defaultdict(Fraction)
    for ma, fa in fb.items():
        sa = conjugation_sign(ma)
        for mb, gcomp in gb.items():
            v = _pair_components(kap, fa, gcomp)
            if v:
                sign, m = blade_product(ma, mb)
                acc[m] += sa * sign * v
    base = base_constant(rd)
    return {m: base * v for m, v in sorted(acc.items()) if v}


def _degree_of(p: CPoly) -> int:
    degs = p.degrees()
    if len(degs) != 1:
        raise ValueError("spherical pairing needs homogeneous polynomials")
    return degs.pop()


def sphere_pairing(rd: ReflectionData, f: CPoly, g: CPoly) -> GammaExpr:
    """int_{S^{d-1}} sc[conj(f) g] h_k^2 dSigma for homogeneous f, g.

    Uses the radial split int_{R^d} q e^{-r^2} h^2 dx = 1/2 Gamma((m + mu)/2) int_S q h^2
    for q homogeneous of degree m.
    """
    m = _degree_of(f) + _degree_of(g)
    return inner_product_H(rd, f, g) * GammaExpr.gamma((m + rd.mu) / 2, power=-1, c=2)


def sphere_norm_sq(rd: ReflectionData, p: CPoly) -> GammaExpr:
    """||P||_k^2 = int_{S^{d-1}} |P|^2 h_k^2 dSigma."""
    return sphere_pairing(rd, p, p)


def sphere_area(d: int) -> GammaExpr:
    """|S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)."""
    return GammaExpr.monomial(2, d, [(Fraction(d, 2), -1)])


def sphere_weight_mass(rd: ReflectionData) -> GammaExpr:
    """Closed form of int_{S^{d-1}} h_k^2 for Z2^d: 2 prod Gamma(k_i + 1/2) / Gamma(mu/2)."""
    kap = _require_z2(rd)
    return GammaExpr.monomial(2, 0, [(k + Fraction(1, 2), 1) for k in kap] + [(rd.mu / 2, -1)])


def radial_pairing_closed_form(s: int, t: int, n: int, mu, norm: GammaExpr) -> GammaExpr:
    """Closed form of (x^s P_n, x^t P_n)_H in terms of ||P_n||_k^2."""
    if (s - t) % 2:
        return GammaExpr.zero()
    mu = Fraction(mu)
    half = (s + t) // 2
    sign = (-1) ** half if s % 2 == 0 else (-1) ** (half + 1)
    return GammaExpr.gamma(Fraction(s + t + 2 * n, 2) + mu / 2, c=Fraction(sign, 2)) * norm


def adjoint_sides(rd: ReflectionData, p: Sequence, q: Sequence, pn: CPoly) -> Tuple[GammaExpr, GammaExpr]:
    """((D_+(p P_n), q P_n)_H, (p P_n, D_h(q P_n))_H) for radial coefficient vectors p, q."""
    pp = from_radial(p, pn)
    qp = from_radial(q, pn)
    return inner_product_H(rd, d_plus(rd, pp), qp), inner_product_H(rd, pp, dunkl_dirac(rd, qp))


def adjoint_check(rd: ReflectionData, p: Sequence, q: Sequence, pn: CPoly) -> bool:
    lhs, rhs = adjoint_sides(rd, p, q, pn)
    return lhs == rhs


def c_product(s: int, mu, n: int) -> Fraction:
    """C(s) C(s-1) ... C(1)."""
    from .hermite import c_coefficient

    out = Fraction(1)
    for k in range(1, s + 1):
        out *= c_coefficient(k, mu, n)
    return out


def gamma_closed_form(s: int, mu, n: int, d: int) -> GammaExpr:
    """4^s floor(s/2)! pi^{d/2} Gamma((s + mu)/2 + n + [s odd]/2) / Gamma(d/2)."""
    mu = Fraction(mu)
    half = s // 2
    fact = 1
    for k in range(2, half + 1):
        fact *= k
    z = (s + mu) / 2 + n if s % 2 == 0 else (s + mu + 1) / 2 + n
    return GammaExpr.monomial(4 ** s * fact, d, [(z, 1), (Fraction(d, 2), -1)])


CONVENTIONS = ("average", "total")


def gamma_norm(rd: ReflectionData, h_s: CPoly, pn: CPoly, *, norm: GammaExpr | None = None,
               convention: str = "average") -> GammaExpr:
    """(H_s, H_s)_H with P_n rescaled to unit spherical norm.

    ``average``: (1/|S^{d-1}|) int |P|^2 h^2 = 1.  ``total``: int |P|^2 h^2 = 1.
    ``norm`` may carry a precomputed ||P_n||_k^2.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    if norm is None:
        norm = sphere_norm_sq(rd, pn)
    value = inner_product_H(rd, h_s, h_s) / norm
    if convention == "average":
        value = value * sphere_area(rd.d)
    return value


def gamma_ratio_closed(s: int, mu, n: int) -> Fraction:
    """gamma_{s}/gamma_{0} from the closed form, reduced to a rational."""
    mu = Fraction(mu)
    half = s // 2
    fact = 1
    for k in range(2, half + 1):
        fact *= k
    z = (s + mu) / 2 + n if s % 2 == 0 else (s + mu + 1) / 2 + n
    return 4 ** s * fact * gamma_ratio(z, mu / 2 + n)
