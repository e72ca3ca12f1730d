"""
Floating-point cross-checks: generalized Gauss-Hermite rules, tensor
quadrature for Z2^d, Monte Carlo for the other groups, and a finite-difference
Dunkl-Dirac operator on callables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .clifford import blade_product, conjugation_sign
from .errors import UnsupportedGroupError
from .multipoly import CPoly, reflection_matrix
from .reflection import ReflectionData, weight_batch

MAX_ORDER = 64


@dataclass(frozen=True)
class QuadRule:
    """m-point rule for int f(t) |t|^{2 kappa} e^{-t^2} dt."""
    nodes: np.ndarray
    weights: np.ndarray
    kappa: Fraction
    order: int

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def weight_moment_ratios(kappa, count: int) -> List[Fraction]:
    """m_l / m_0 for l < count, where m_l = int t^l |t|^{2 kappa} e^{-t^2} dt.

    Odd moments vanish and m_{2j}/m_0 = prod_{i<j} (kappa + 1/2 + i).
    """
    kappa = Fraction(kappa)
    out = []
    run = Fraction(1)
    for l in range(count):
        if l % 2:
            out.append(Fraction(0))
        else:
            out.append(run)
            run *= kappa + Fraction(1, 2) + l // 2
    return out


def chebyshev_recurrence(moments: Sequence[Fraction], m: int) -> Tuple[List[Fraction], List[Fraction]]:
    """Three-term recurrence coefficients (alpha_k, beta_k), k < m, from 2m moments.

    Chebyshev's algorithm carried out in exact rational arithmetic, which
    sidesteps the Hankel ill-conditioning of the float version.
    """
    if len(moments) < 2 * m:
        raise ValueError("need 2m moments")
    alpha = [moments[1] / moments[0]]
    beta = [moments[0]]
    sig_prev = [Fraction(0)] * (2 * m)
    sig = list(moments[:2 * m])
    for k in range(1, m):
        new = [Fraction(0)] * (2 * m)
        for l in range(k, 2 * m - k):
            new[l] = sig[l + 1] - alpha[k - 1] * sig[l] - beta[k - 1] * sig_prev[l]
        alpha.append(new[k + 1] / new[k] - sig[k] / sig[k - 1])
        beta.append(new[k] / sig[k - 1])
        sig_prev, sig = sig, new
    return alpha, beta


def generalized_hermite_beta(kappa, k: int) -> Fraction:
    """Closed-form recurrence coefficient of the weight |t|^{2 kappa} e^{-t^2} (k >= 1)."""
    kappa = Fraction(kappa)
    return Fraction(k, 2) if k % 2 == 0 else (k + 2 * kappa) / 2


def _orthonormal_values(x: np.ndarray, alpha: np.ndarray, beta: np.ndarray, m: int):
    """p_m(x), p_m'(x) and sum_{k<m} p_k(x)^2 for the orthonormal family of unit mass.

    Uses sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1}; needs m+1 betas.
    """
    sb = np.sqrt(beta)
    p_prev, p = np.zeros_like(x), np.ones_like(x)
    dp_prev, dp = np.zeros_like(x), np.zeros_like(x)
    total = np.ones_like(x)
    for k in range(m):
        b_here = sb[k] if k else 0.0
        p_next = ((x - alpha[k]) * p - b_here * p_prev) / sb[k + 1]
        dp_next = ((x - alpha[k]) * dp + p - b_here * dp_prev) / sb[k + 1]
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
        if k + 1 < m:
            total += p * p
    return p, dp, total


@lru_cache(maxsize=64)
def quad_rule(kappa, m: int) -> QuadRule:
    """Golub-Welsch rule built from the exact moments of |t|^{2 kappa} e^{-t^2}."""
    kappa = Fraction(kappa)
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    if not 1 <= m <= MAX_ORDER:
        raise ValueError(f"quadrature order must be in 1..{MAX_ORDER}; use a smaller m")
    ratios = weight_moment_ratios(kappa, 2 * m + 2)
    alpha, beta = chebyshev_recurrence(ratios, m + 1)
    diag = np.array([float(a) for a in alpha])
    bs = np.array([float(b) for b in beta])
    if m == 1:
        nodes = diag[:1].copy()
    else:
        nodes = eigh_tridiagonal(diag[:m], np.sqrt(bs[1:m]), eigvals_only=True)
    # eigenvector weights lose relative accuracy in the tails; polish the
    # nodes by Newton on p_m and use the Christoffel sum instead
    for _ in range(3):
        pm, dpm, _ = _orthonormal_values(nodes, diag, bs, m)
        nodes = nodes - pm / dpm
    _, _, christoffel = _orthonormal_values(nodes, diag, bs, m)
    m0 = math.gamma(float(kappa) + 0.5)
    weights = m0 / christoffel
    # enforce exact symmetry of the symmetric weight
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    if not (np.all(np.isfinite(weights)) and np.all(weights > 0)):
        raise ArithmeticError(f"quadrature construction broke down at m={m}; use a smaller m")
    return QuadRule(nodes=nodes, weights=weights, kappa=kappa, order=m)


# -- polynomial evaluation ------------------------------------------------

def eval_poly(f: CPoly, x: Sequence[float]) -> np.ndarray:
    """Blade components (index = mask) of f at a single point."""
    return eval_poly_batch(f, np.asarray(x, dtype=float)[None, :])[0]


def eval_poly_batch(f: CPoly, points: np.ndarray) -> np.ndarray:
    """Evaluate at many points; returns shape (N, 2^d)."""
    points = np.asarray(points, dtype=float)
    n, d = points.shape
    if d != f.d:
        raise ValueError("point dimension differs from polynomial dimension")
    out = np.zeros((n, 1 << d))
    powers: Dict[Tuple[int, int], np.ndarray] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = points[:, i] ** e
        return powers[key]

    grouped: Dict[tuple, list] = {}
    for (beta, mask), c in f.items():
        grouped.setdefault(beta, []).append((mask, float(c)))
    for beta, entries in grouped.items():
        mono = np.ones(n)
        for i, e in enumerate(beta):
            if e:
                mono = mono * power(i, e)
        for mask, c in entries:
            out[:, mask] += c * mono
    return out


def scalar_pairing_values(fv: np.ndarray, gv: np.ndarray) -> np.ndarray:
    """sc[conj(f) g] pointwise: the blade-wise dot product."""
    return np.einsum("ij,ij->i", fv, gv)


def clifford_pairing_values(fv: np.ndarray, gv: np.ndarray, d: int) -> np.ndarray:
    """conj(f) g pointwise, shape (N, 2^d)."""
    nb = 1 << d
    out = np.zeros_like(fv)
    for a in range(nb):
        sa = conjugation_sign(a)
        for b in range(nb):
            sign, m = blade_product(a, b)
            out[:, m] += sa * sign * fv[:, a] * gv[:, b]
    return out


# -- tensor quadrature ----------------------------------------------------

def polynomial_weight_degree(rd: ReflectionData) -> int | None:
    """Total degree of h_k^2 when every kappa is an integer (so h_k^2 is a polynomial)."""
    if all(Fraction(k).denominator == 1 for k in rd.kappa):
        return int(2 * rd.gamma_kappa)
    return None


def tensor_supported(rd: ReflectionData) -> bool:
    return rd.is_z2 or polynomial_weight_degree(rd) is not None


def required_order(rd: ReflectionData, f: CPoly, g: CPoly) -> int:
    """Smallest m for which the tensor rule integrates conj(f) g h^2 e^{-|x|^2} exactly."""
    top = max(a + b for a, b in zip(f.max_axis_degree(), g.max_axis_degree()))
    if not rd.is_z2:
        extra = polynomial_weight_degree(rd)
        if extra is None:
            raise UnsupportedGroupError("tensor quadrature needs Z2^d or integer multiplicities")
        top += extra
    return top // 2 + 1


def tensor_grid(rd: ReflectionData, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the product rule; for non-Z2 groups h^2 is folded into the weights."""
    if rd.is_z2:
        rules = [quad_rule(k, m) for k in rd.axis_kappa()]
    elif polynomial_weight_degree(rd) is not None:
        rules = [quad_rule(0, m)] * rd.d
    else:
        raise UnsupportedGroupError("tensor quadrature needs Z2^d or integer multiplicities")
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    wgrids = np.meshgrid(*[r.weights for r in rules], indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    w = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    if not rd.is_z2:
        w = w * weight_batch(rd, pts)
    return pts, w


def numeric_inner_product(rd: ReflectionData, f: CPoly, g: CPoly, m: int | None = None, *,
                          full: bool = False):
    """(f, g)_H by tensor Gauss quadrature; exact up to rounding when degrees fit.

    ``m=None`` picks the smallest exact order.  ``full`` returns all blade
    components of the Clifford-valued pairing.
    """
    need = required_order(rd, f, g)
    if m is None:
        m = need
    if need > m:
        raise ValueError(f"integrand needs a {need}-point rule for exactness; got m={m}")
    pts, w = tensor_grid(rd, m)
    fv, gv = eval_poly_batch(f, pts), eval_poly_batch(g, pts)
    if full:
        return clifford_pairing_values(fv, gv, f.d).T @ w
    return float(scalar_pairing_values(fv, gv) @ w)


# -- Monte Carlo ----------------------------------------------------------

@dataclass(frozen=True)
class MCEstimate:
    value: float
    abs_err_estimate: float

    def to_json(self) -> dict:
        return {"value": self.value, "abs_err_estimate": self.abs_err_estimate}


def _pair_degrees(polys: Sequence[CPoly]) -> List[int]:
    degs = sorted({a + b for p in polys for q in polys for a in p.degrees() for b in q.degrees()})
    return degs or [0]


def mc_pairings(rd: ReflectionData, polys: Sequence[CPoly], samples: int, seed: int,
                *, chunk: int = 200_000) -> Tuple[np.ndarray, np.ndarray]:
    """All scalar pairings (polys[i], polys[j])_H by Monte Carlo with common samples.

    Importance sampling from an equal mixture of radial proposals
    q_k(x) ~ |x|^k e^{-|x|^2}, one per homogeneous degree k = D + 2 gamma_k of
    the integrand: r^2 ~ Gamma((k + d)/2), direction uniform.  The radial
    growth of the integrand then cancels, which keeps the weights bounded;
    plain Gaussian sampling gives heavy tails and unreliable error bars.
    Returns (values, standard errors) matrices.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    d = rd.d
    k = len(polys)
    shapes = [(deg + 2 * float(rd.gamma_kappa) + d) / 2 for deg in _pair_degrees(polys)]
    area = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
    # log of the normaliser |S| Gamma(shape) / 2 of each component
    log_z = np.array([math.log(area / 2) + math.lgamma(a) for a in shapes])
    powers = np.array([2 * a - d for a in shapes])
    rng = np.random.default_rng(seed)
    s1 = np.zeros((k, k))
    s2 = np.zeros((k, k))
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        comp = rng.integers(len(shapes), size=size)
        r = np.sqrt(rng.gamma(np.asarray(shapes)[comp]))
        direction = rng.normal(size=(size, d))
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        x = direction * r[:, None]
        # q(x) e^{|x|^2} = mean_k r^{k} / Z_k
        log_r = np.log(r)[:, None]
        log_q = np.logaddexp.reduce(powers[None, :] * log_r - log_z[None, :], axis=1) - math.log(len(shapes))
        scale = weight_batch(rd, x) * np.exp(-log_q)
        vals = [eval_poly_batch(p, x) for p in polys]
        for i in range(k):
            for j in range(i, k):
                v = scalar_pairing_values(vals[i], vals[j]) * scale
                s1[i, j] += v.sum()
                s2[i, j] += (v * v).sum()
        done += size
    mean = s1 / samples
    var = np.maximum(s2 / samples - mean ** 2, 0.0)
    values = mean
    errors = np.sqrt(var / (samples - 1))
    iu = np.triu_indices(k, 1)
    values.T[iu] = values[iu]
    errors.T[iu] = errors[iu]
    return values, errors


def mc_inner_product(rd: ReflectionData, f: CPoly, g: CPoly, samples: int, seed: int) -> MCEstimate:
    values, errors = mc_pairings(rd, [f, g], samples, seed)
    return MCEstimate(float(values[0, 1]), float(errors[0, 1]))


# -- finite-difference Dunkl-Dirac on callables ---------------------------

def numeric_dunkl_dirac(rd: ReflectionData, func: Callable[[np.ndarray], np.ndarray],
                        x: Sequence[float], h: float = 1e-5) -> np.ndarray:
    """D_h applied to a Clifford-valued callable at x, with central differences.

    ``func`` maps a point to its blade-component vector (length 2^d).  The
    point must not lie on a mirror.
    """
    x = np.asarray(x, dtype=float)
    d = x.size
    nb = 1 << d
    fx = np.asarray(func(x), dtype=float)
    comps = []
    for i in range(d):
        step = np.zeros(d)
        step[i] = h
        ti = (np.asarray(func(x + step)) - np.asarray(func(x - step))) / (2 * h)
        comps.append(ti)
    for a, kap in zip(rd.positive, rd.kappa):
        if not kap:
            continue
        av = np.array([float(v) for v in a])
        denom = float(av @ x)
        if abs(denom) < 1e-12:
            raise ValueError("evaluation point lies on a mirror")
        sig = np.array([[float(v) for v in row] for row in reflection_matrix(a)])
        diff = (fx - np.asarray(func(sig @ x))) / denom * float(kap)
        for i in range(d):
            if av[i]:
                comps[i] = comps[i] + diff * av[i]
    out = np.zeros(nb)
    for i in range(d):
        bit = 1 << i
        for mask in range(nb):
            sign, m = blade_product(bit, mask)
            out[m] += sign * comps[i][mask]
    return out


def gaussian_dressed_callable(f: CPoly) -> Callable[[np.ndarray], np.ndarray]:
    def func(x):
        x = np.asarray(x, dtype=float)
        return eval_poly(f, x) * math.exp(-float(x @ x))
    return func
