"""
Dunkl-Clifford-Hermite polynomials H_s = (D_+)^s P_n and their radial data.

Every H_s factors as (sum_j a_j^s x^j) P_n; ``radial[s]`` stores the a_j^s
with mu evaluated as a rational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from .dunkl import d_plus, dunkl_dirac
from .errors import InternalConsistencyError
from .gammaexpr import gamma_ratio
from .multipoly import CPoly, from_radial, r_squared, radial_decompose, x_poly
from .reflection import ReflectionData


def c_coefficient(s: int, mu, n: int, *, allow_zero: bool = False) -> Fraction:
    """C(s, mu, n): 2s for even s, 2(s + mu + 2n - 1) for odd s.

    ``allow_zero`` returns C(0) = 0, which keeps D_h H_0 = C(0) H_{-1} uniform.
    """
    if s == 0 and allow_zero:
        return Fraction(0)
    if s < 1:
        raise ValueError("C(s, mu, n) is defined for s >= 1")
    mu = Fraction(mu)
    return Fraction(2 * s) if s % 2 == 0 else 2 * (s + mu + 2 * n - 1)


def radial_action_coefficient(s: int, mu, n: int) -> Fraction:
    """c with D_h(x^s P_n) = c x^{s-1} P_n: -s for even s, -(s + mu + 2n - 1) for odd s."""
    mu = Fraction(mu)
    if s % 2 == 0:
        return Fraction(-s)
    return -(s + mu + 2 * n - 1)


def tabulated_radial(s: int, mu, n: int) -> List[Fraction]:
    """Closed-form radial coefficients of H_0 .. H_4, ascending powers of x."""
    mu = Fraction(mu)
    a = mu + 2 * n
    table = {
        0: [1],
        1: [0, -2],
        2: [2 * a, 0, 4],
        3: [0, -4 * (a + 2), 0, -8],
        4: [4 * (a + 2) * a, 0, 16 * (a + 2), 0, 16],
    }
    if s not in table:
        raise ValueError("closed forms are tabulated for s <= 4 only")
    return [Fraction(c) for c in table[s]]


def tabulated_form(s: int, mu, n: int, pn: CPoly) -> CPoly:
    return from_radial(tabulated_radial(s, mu, n), pn)


@dataclass
class HermiteFamily:
    rd: ReflectionData
    pn: CPoly
    n: int
    max_s: int
    polys: List[CPoly] = field(default_factory=list)
    radial: List[List[Fraction]] = field(default_factory=list)

    @property
    def mu(self) -> Fraction:
        return self.rd.mu

    def radial_coeff(self, s: int, j: int) -> Fraction:
        """a_j^s with out-of-range indices treated as zero."""
        if j < 0 or s < 0 or s >= len(self.radial):
            return Fraction(0)
        row = self.radial[s]
        return row[j] if j < len(row) else Fraction(0)


def hermite_generate(rd: ReflectionData, pn: CPoly, max_s: int) -> HermiteFamily:
    if not pn.is_homogeneous() or pn.is_zero():
        raise ValueError("P_n must be a nonzero homogeneous polynomial")
    if not dunkl_dirac(rd, pn).is_zero():
        raise ValueError("P_n is not Dunkl-monogenic")
    n = pn.degree()
    fam = HermiteFamily(rd=rd, pn=pn, n=n, max_s=max_s)
    h = pn
    for s in range(max_s + 1):
        if s:
            h = d_plus(rd, h)
        fam.polys.append(h)
        coeffs = radial_decompose(h, pn)
        coeffs += [Fraction(0)] * (s + 1 - len(coeffs))
        fam.radial.append(coeffs)
    return fam


def three_term_next(rd: ReflectionData, h_s: CPoly, h_prev: CPoly | None, s: int, mu, n: int) -> CPoly:
    """H_{s+1} = -2x H_s + C(s, mu, n) H_{s-1}; for s = 0 the second term is absent."""
    out = (x_poly(h_s.d) * h_s).scale(-2)
    if s >= 1:
        if h_prev is None:
            raise ValueError("H_{s-1} required for s >= 1")
        out = out + h_prev.scale(c_coefficient(s, mu, n))
    return out


def differential_equation_residual(rd: ReflectionData, h_s: CPoly, s: int, mu, n: int) -> CPoly:
    """D_h^2 H - 2x D_h H - C(s, mu, n) H."""
    dh = dunkl_dirac(rd, h_s)
    c = c_coefficient(s, mu, n, allow_zero=True)
    return dunkl_dirac(rd, dh) - (x_poly(h_s.d) * dh).scale(2) - h_s.scale(c)


def laguerre_poly(s: int, alpha) -> List[Fraction]:
    """Coefficients (in t^j, ascending) of the generalized Laguerre L_s^alpha(t).

    Gamma(s + alpha + 1)/Gamma(j + alpha + 1) = prod_{k=j}^{s-1} (alpha + 1 + k).
    """
    alpha = Fraction(alpha)
    if s < 0:
        raise ValueError("degree must be nonnegative")
    if alpha <= -1 and alpha.denominator == 1:
        # Gamma(j + alpha + 1) hits a pole for some j
        raise ValueError(f"Gamma-ratio pole: L_s^alpha undefined in this form for alpha={alpha}")
    out = []
    fact = [1]
    for k in range(1, s + 1):
        fact.append(fact[-1] * k)
    for j in range(s + 1):
        ratio = Fraction(1)
        for k in range(j, s):
            ratio *= alpha + 1 + k
        out.append(ratio / (fact[j] * fact[s - j]) * (-1) ** j)
    return out


def laguerre_form(rd: ReflectionData, pn: CPoly, s: int, mu, n: int) -> CPoly:
    """The Laguerre expression for H_s with |x|^2 as a genuine scalar polynomial."""
    mu = Fraction(mu)
    d = pn.d
    rr = r_squared(d)
    if s % 2 == 0:
        k = s // 2
        coeffs = laguerre_poly(k, mu / 2 + n - 1)
        scale = Fraction(2 ** s)
        for i in range(2, k + 1):
            scale *= i
    else:
        k = (s - 1) // 2
        coeffs = laguerre_poly(k, mu / 2 + n)
        scale = Fraction(-(2 ** s))
        for i in range(2, k + 1):
            scale *= i
    radial = CPoly.zero(d)
    power = CPoly.constant(1, d)
    for c in coeffs:
        radial = radial + power.scale(c)
        power = power * rr
    radial = radial.scale(scale)
    if s % 2:
        radial = x_poly(d) * radial
    return radial * pn


def laguerre_oracle_compare(family: HermiteFamily, s: int) -> bool:
    if s > family.max_s:
        raise ValueError("s exceeds the generated range")
    return laguerre_form(family.rd, family.pn, s, family.mu, family.n) == family.polys[s]


def coeff_recurrence_failures(family: HermiteFamily) -> List[str]:
    """Every coefficient relation from the Laguerre derivation that fails."""
    mu, n = family.mu, family.n
    a = family.radial_coeff
    bad = []
    for s in range(family.max_s + 1):
        for j in range(s + 1):
            if (j - s) % 2 and a(s, j):
                bad.append(f"parity: a_{j}^{s} = {a(s, j)} should vanish")
    # two-step recurrences
    for s in range(2, family.max_s + 1):
        if s % 2 == 0:
            t = s // 2
            for j in range(t + 1):
                rhs = (2 * (j + 1) * (2 * j + mu + 2 * n) * a(s - 2, 2 * j + 2)
                       + 2 * (4 * j + mu + 2 * n) * a(s - 2, 2 * j) + 4 * a(s - 2, 2 * j - 2))
                if a(s, 2 * j) != rhs:
                    bad.append(f"even recurrence s={s} j={j}")
        else:
            t = (s - 1) // 2
            for j in range(t + 1):
                rhs = (2 * (j + 1) * (2 * j + mu + 2 * n + 2) * a(s - 2, 2 * j + 3)
                       + 2 * (4 * j + mu + 2 * n + 2) * a(s - 2, 2 * j + 1) + 4 * a(s - 2, 2 * j - 1))
                if a(s, 2 * j + 1) != rhs:
                    bad.append(f"odd recurrence s={s} j={j}")
    # ladders within one polynomial and the closed seeds
    for s in range(family.max_s + 1):
        t = s // 2
        if s % 2 == 0:
            for j in range(1, t + 1):
                if 2 * j * (2 * j + mu + 2 * n - 2) * a(s, 2 * j) != 4 * (t - j + 1) * a(s, 2 * j - 2):
                    bad.append(f"even ladder s={s} j={j}")
            seed = 2 ** (2 * t) * gamma_ratio(mu / 2 + n + t, mu / 2 + n)
            if a(s, 0) != seed:
                bad.append(f"even seed s={s}: {a(s, 0)} != {seed}")
        else:
            for j in range(1, t + 1):
                if 2 * j * (2 * j + mu + 2 * n) * a(s, 2 * j + 1) != 4 * (t - j + 1) * a(s, 2 * j - 1):
                    bad.append(f"odd ladder s={s} j={j}")
            seed = -2 * 2 ** (2 * t) * gamma_ratio(mu / 2 + n + t + 1, mu / 2 + n + 1)
            if a(s, 1) != seed:
                bad.append(f"odd seed s={s}: {a(s, 1)} != {seed}")
    return bad


def coeff_recurrence_check(family: HermiteFamily) -> bool:
    return not coeff_recurrence_failures(family)


def radial_recurrence(max_s: int, mu, n: int) -> List[List[Fraction]]:
    """Radial coefficients from the action of D_+ on x^j P_n alone.

    D_h(x^j P_n) = -j x^{j-1} P_n (j even), -(j + mu + 2n - 1) x^{j-1} P_n (j odd);
    the -2x part shifts j -> j + 1.  No polynomials in x_1..x_d are involved.
    """
    mu = Fraction(mu)
    rows = [[Fraction(1)]]
    for _ in range(max_s):
        prev = rows[-1]
        nxt = [Fraction(0)] * (len(prev) + 1)
        for j, c in enumerate(prev):
            if not c:
                continue
            if j:
                lower = -j if j % 2 == 0 else -(j + mu + 2 * n - 1)
                nxt[j - 1] += c * lower
            nxt[j + 1] += -2 * c
        rows.append(nxt)
    return rows


def lowering_residual(rd: ReflectionData, family: HermiteFamily, s: int) -> CPoly:
    """D_h H_s - C(s, mu, n) H_{s-1} (zero polynomial expected)."""
    dh = dunkl_dirac(rd, family.polys[s])
    if s == 0:
        return dh
    return dh - family.polys[s - 1].scale(c_coefficient(s, family.mu, family.n))


def check_family_consistency(family: HermiteFamily) -> None:
    """Cheap structural invariants; raises on violation."""
    for s, h in enumerate(family.polys):
        if h.degree() != s + family.n:
            raise InternalConsistencyError(f"H_{s} has degree {h.degree()}", witness=h)
