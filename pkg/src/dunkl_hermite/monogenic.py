"""
Homogeneous Dunkl-monogenic polynomials M_n = ker D_h in degree n.

The kernel is computed as an exact nullspace of D_h on the basis
{x^beta e_A : |beta| = n}.  Since D_h acts from the left, the kernel is a right
R_{0,d}-module; :func:`module_basis` extracts generators greedily by rank.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional

from .clifford import Multivector
from .dunkl import dunkl_dirac
from .errors import InternalConsistencyError, UnsupportedGroupError
from .gammaexpr import GammaExpr
from .linalg import EchelonBasis, nullspace
from .multipoly import CPoly, monomials
from .reflection import ReflectionData


def expected_rank(n: int, d: int) -> int:
    return comb(n + d - 2, n)


def _kernel_vectors(rd: ReflectionData, n: int):
    d = rd.d
    nblades = 1 << d
    cols = monomials(d, n)
    # D_h(x^beta e_A) = D_h(x^beta) e_A
    images = {beta: dunkl_dirac(rd, CPoly.monomial(beta)) for beta in cols}
    row_index: Dict[tuple, int] = {}
    column_entries: List[Dict[int, Fraction]] = []
    for beta in cols:
        img = images[beta]
        for mask in range(nblades):
            entries: Dict[int, Fraction] = {}
            for (g, m), c in img.right_mul(Multivector.blade(d, mask)).items():
                r = row_index.setdefault((g, m), len(row_index))
                entries[r] = c
            column_entries.append(entries)
    ncols = len(cols) * nblades
    rows: List[Dict[int, Fraction]] = [dict() for _ in range(len(row_index))]
    for j, entries in enumerate(column_entries):
        for r, c in entries.items():
            rows[r][j] = c
    return cols, nblades, nullspace(rows, ncols)


def _vector_to_poly(d: int, cols, nblades: int, vec: Dict[int, Fraction]) -> CPoly:
    coeffs = {}
    for j, c in vec.items():
        beta = cols[j // nblades]
        coeffs[(beta, j % nblades)] = c
    return CPoly(d, coeffs)


def _poly_to_vector(p: CPoly, col_index: Dict[tuple, int]) -> Dict[int, Fraction]:
    return {col_index[key]: c for key, c in p.items()}


def monogenic_kernel(rd: ReflectionData, n: int) -> List[CPoly]:
    """Q-basis of ker D_h among homogeneous polynomials of degree n."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    cols, nblades, kernel = _kernel_vectors(rd, n)
    out = [_vector_to_poly(rd.d, cols, nblades, v) for v in kernel]
    for p in out:
        if not dunkl_dirac(rd, p).is_zero():
            raise InternalConsistencyError("nullspace vector is not monogenic", witness=p)
    return out


@dataclass
class MonogenicBasis:
    n: int
    rd: ReflectionData
    elements: List[CPoly]
    kernel_dim: int
    expected_rank: int
    norms: List[GammaExpr] = field(default_factory=list)   # ||P_j||_k^2, Z2^d only
    gram: Optional[List[List[GammaExpr]]] = None           # spherical pairings, Z2^d only
    orthogonalized: bool = False

    @property
    def rank(self) -> int:
        return len(self.elements)

    @property
    def rank_matches(self) -> bool:
        return self.rank == self.expected_rank

    @property
    def free(self) -> bool:
        """True when the generators' right multiples are independent and span the kernel."""
        return self.rank * (1 << self.rd.d) == self.kernel_dim


def _right_multiples(p: CPoly, nblades: int) -> List[CPoly]:
    return [p.right_mul(Multivector.blade(p.d, m)) for m in range(nblades)]


def module_basis(rd: ReflectionData, n: int, *, seed: int = 0) -> MonogenicBasis:
    """Generators of ker D_h as a right module over R_{0,d}.

    Candidates whose 2^d right multiples add full rank are taken first, then
    deterministic random combinations, then anything that still adds rank.
    """
    d = rd.d
    nblades = 1 << d
    kernel = monogenic_kernel(rd, n)
    col_index = {}
    for beta in monomials(d, n):
        for mask in range(nblades):
            col_index[(beta, mask)] = len(col_index)
    ech = EchelonBasis()
    chosen: List[CPoly] = []

    def try_add(p: CPoly, need_full: bool) -> bool:
        vecs = [_poly_to_vector(q, col_index) for q in _right_multiples(p, nblades)]
        gain = ech.would_increase(vecs)
        if gain == 0 or (need_full and gain < nblades):
            return False
        for v in vecs:
            ech.add(v)
        chosen.append(p)
        return True

    target = len(kernel)
    for p in kernel:
        if ech.rank == target:
            break
        try_add(p, need_full=True)
    rng = random.Random(seed)
    attempts = 0
    while ech.rank < target and attempts < 4 * target:
        attempts += 1
        combo = CPoly.zero(d)
        for p in kernel:
            combo = combo + p.scale(rng.randint(-3, 3))
        if not combo.is_zero():
            try_add(combo, need_full=True)
    for p in kernel:
        if ech.rank == target:
            break
        try_add(p, need_full=False)
    if ech.rank != target:
        raise InternalConsistencyError("right multiples of the kernel do not span the kernel")
    return MonogenicBasis(n=n, rd=rd, elements=chosen, kernel_dim=target,
                          expected_rank=expected_rank(n, d))


def orthonormalize_Z2(basis: MonogenicBasis) -> MonogenicBasis:
    """Gram-Schmidt against the scalar spherical pairing, exactly.

    All pairings for one multiplicity are rational multiples of a common
    Gamma monomial, so the projection coefficients are rational.  Unit norm is
    kept symbolic: ``norms[j]`` holds ||P_j||_k^2.
    """
    from .integrate import sphere_pairing

    rd = basis.rd
    if not rd.is_z2:
        raise UnsupportedGroupError("exact orthonormalisation is only available for Z2^d")
    ortho: List[CPoly] = []
    norms: List[GammaExpr] = []
    for p in basis.elements:
        q = p
        for u, nu in zip(ortho, norms):
            coeff = sphere_pairing(rd, u, p).ratio(nu)
            if coeff is None:
                raise InternalConsistencyError("projection coefficient is not rational")
            if coeff:
                q = q - u.scale(coeff)
        ortho.append(q)
        norms.append(sphere_pairing(rd, q, q))
    gram = [[sphere_pairing(rd, a, b) for b in ortho] for a in ortho]
    return MonogenicBasis(n=basis.n, rd=rd, elements=ortho, kernel_dim=basis.kernel_dim,
                          expected_rank=basis.expected_rank, norms=norms, gram=gram,
                          orthogonalized=True)
