"""
Dunkl operators on Clifford-valued polynomials.

    T_i f = d_i f + sum_{a in R+} kappa(a) (f(x) - f(sigma_a x)) / <a, x> * a_i
    D_h f = sum_i e_i T_i f,      Delta_h = -D_h^2 = sum_i T_i^2
    D_+ f = D_h f - 2 x f

Everything is exact: the divided differences are polynomial divisions with a
zero-remainder check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .clifford import Multivector, mask_from_indices
from .errors import DimensionMismatch, InternalConsistencyError
from .multipoly import CPoly, poly_divided_difference, poly_reflect, x_poly
from .reflection import ReflectionData


def _check(rd: ReflectionData, f: CPoly) -> None:
    if rd.d != f.d:
        raise DimensionMismatch(f"group acts on R^{rd.d} but polynomial has d={f.d}")


def _divided_differences(rd: ReflectionData, f: CPoly) -> Dict[int, CPoly]:
    return {k: poly_divided_difference(f, a)
            for k, (a, kap) in enumerate(zip(rd.positive, rd.kappa)) if kap}


def dunkl_T(rd: ReflectionData, i: int, f: CPoly) -> CPoly:
    """The i-th Dunkl operator (1-based axis index)."""
    _check(rd, f)
    if not 1 <= i <= rd.d:
        raise ValueError(f"axis index {i} out of range 1..{rd.d}")
    out = f.diff(i)
    for a, kap in zip(rd.positive, rd.kappa):
        if kap and a[i - 1]:
            out = out + poly_divided_difference(f, a).scale(kap * a[i - 1])
    return out


def dunkl_dirac(rd: ReflectionData, f: CPoly) -> CPoly:
    """D_h f = sum_i e_i T_i f.

    The difference part is assembled per root: sum_i e_i a_i = a as a vector.
    """
    _check(rd, f)
    out = CPoly.zero(f.d)
    for i in range(1, f.d + 1):
        out = out + f.diff(i).left_mul_generator(i)
    for k, dd in _divided_differences(rd, f).items():
        a = rd.positive[k]
        out = out + dd.left_mul(Multivector.vector(a) * rd.kappa[k])
    return out


def dunkl_laplacian(rd: ReflectionData, f: CPoly, *, check: bool = True) -> CPoly:
    """sum_i T_i^2 f; with ``check`` also asserts it equals -D_h(D_h f)."""
    out = CPoly.zero(f.d)
    for i in range(1, f.d + 1):
        out = out + dunkl_T(rd, i, dunkl_T(rd, i, f))
    if check:
        other = -dunkl_dirac(rd, dunkl_dirac(rd, f))
        if other != out:
            raise InternalConsistencyError("sum T_i^2 f differs from -D_h^2 f", witness=out - other)
    return out


def d_plus(rd: ReflectionData, f: CPoly) -> CPoly:
    """Raising operator D_+ = D_h - 2x."""
    return dunkl_dirac(rd, f) - (x_poly(f.d) * f).scale(2)


def _bivector(d: int, i: int, j: int) -> Multivector:
    return Multivector.blade(d, mask_from_indices((i, j)))


def phi_omega(f: CPoly) -> CPoly:
    """Angular part -sum_{i<j} e_i e_j (x_i d_j - x_j d_i) f."""
    d = f.d
    out = CPoly.zero(d)
    for i in range(1, d + 1):
        xi = CPoly.variable(d, i)
        for j in range(i + 1, d + 1):
            xj = CPoly.variable(d, j)
            rot = xi * f.diff(j) - xj * f.diff(i)
            out = out - rot.left_mul(_bivector(d, i, j))
    return out


def psi(rd: ReflectionData, f: CPoly) -> CPoly:
    """Reflection part of the spherical operator, transcribed term by term."""
    _check(rd, f)
    d = f.d
    out = CPoly.zero(d)
    for a, kap in zip(rd.positive, rd.kappa):
        if not kap:
            continue
        dd = poly_divided_difference(f, a).scale(kap)
        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                # (x_i a_j - x_j a_i) as a scalar polynomial
                lin = CPoly.variable(d, i).scale(a[j - 1]) - CPoly.variable(d, j).scale(a[i - 1])
                if lin.is_zero():
                    continue
                out = out - (lin * dd).left_mul(_bivector(d, i, j))
        out = out - poly_reflect(f, a).scale(kap)
    return out


def gamma_sph(rd: ReflectionData, f: CPoly) -> CPoly:
    """Gamma_kappa f = gamma_kappa f + Phi_omega f + Psi f."""
    _check(rd, f)
    return f.scale(rd.gamma_kappa) + phi_omega(f) + psi(rd, f)


def spherical_residual(rd: ReflectionData, f: CPoly) -> CPoly:
    """x D_h f + m f + Gamma_kappa f, zero for homogeneous f of degree m.

    Polynomial restatement of D_h = omega (d_r + Gamma_kappa / r) using
    x = r omega and x^2 = -r^2.
    """
    degs = f.degrees()
    if len(degs) > 1:
        raise ValueError("spherical identity needs a homogeneous polynomial")
    m = next(iter(degs), 0)
    return x_poly(f.d) * dunkl_dirac(rd, f) + f.scale(m) + gamma_sph(rd, f)


@dataclass(frozen=True)
class GaussianDressed:
    """Stands for poly(x) * exp(-|x|^2)."""
    poly: CPoly


def gaussian_dirac(rd: ReflectionData, g: GaussianDressed) -> GaussianDressed:
    """D_h applied to a Gaussian-dressed polynomial.

    The Gaussian is W-invariant, so the reflection terms pass through it and
    the Leibniz rule gives T_i(e^{-r^2} f) = e^{-r^2} (T_i f - 2 x_i f).
    """
    f = g.poly
    d = f.d
    out = CPoly.zero(d)
    for i in range(1, d + 1):
        ti = dunkl_T(rd, i, f) - (CPoly.variable(d, i) * f).scale(2)
        out = out + ti.left_mul_generator(i)
    return GaussianDressed(out)


def rodrigues(rd: ReflectionData, pn: CPoly, s: int) -> CPoly:
    """Polynomial part of e^{r^2} D_h^s (e^{-r^2} P_n)."""
    g = GaussianDressed(pn)
    for _ in range(s):
        g = gaussian_dirac(rd, g)
    return g.poly
