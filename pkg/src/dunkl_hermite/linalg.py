"""Exact linear algebra over Q on sparse rows (dicts column -> Fraction)."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence

SparseVec = Dict[int, Fraction]


def _axpy(target: SparseVec, factor: Fraction, source: SparseVec) -> None:
    # target -= factor * source, in place
    for col, v in source.items():
        nv = target.get(col, 0) - factor * v
        if nv:
            target[col] = nv
        else:
            target.pop(col, None)


def rref(rows: Sequence[SparseVec]) -> tuple[List[SparseVec], List[int]]:
    """Reduced row echelon form; returns (pivot rows, pivot columns)."""
    pivots: Dict[int, SparseVec] = {}
    order: List[int] = []
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        for pc in order:
            if pc in r:
                _axpy(r, r[pc], pivots[pc])
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for other in order:
            prow = pivots[other]
            if pc in prow:
                _axpy(prow, prow[pc], r)
        pivots[pc] = r
        order.append(pc)
    order.sort()
    return [pivots[c] for c in order], order


def nullspace(rows: Sequence[SparseVec], ncols: int) -> List[SparseVec]:
    """Basis of {v : A v = 0}; one vector per free column, free entry set to 1."""
    reduced, pivcols = rref(rows)
    pivset = set(pivcols)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v: SparseVec = {free: Fraction(1)}
        for prow, pc in zip(reduced, pivcols):
            c = prow.get(free)
            if c:
                v[pc] = -c
        basis.append(v)
    return basis


def rank(rows: Sequence[SparseVec]) -> int:
    return len(rref(rows)[1])


def solve_exact(rows: Sequence[SparseVec], rhs: Sequence[Fraction], ncols: int) -> Optional[List[Fraction]]:
    """One solution of A v = b (free variables set to 0) or None if inconsistent."""
    aug = ncols
    augmented = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[aug] = Fraction(b)
        augmented.append(r)
    reduced, pivcols = rref(augmented)
    if aug in pivcols:
        return None
    sol = [Fraction(0)] * ncols
    for prow, pc in zip(reduced, pivcols):
        sol[pc] = prow.get(aug, Fraction(0))
    return sol


class EchelonBasis:
    """Incrementally maintained echelon basis used for rank-growth tests."""

    def __init__(self):
        self._rows: Dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        r = {c: Fraction(v) for c, v in vec.items() if v}
        # each stored row has its pivot as minimum column, so ascending order suffices
        for pc in sorted(self._rows):
            if pc in r:
                _axpy(r, r[pc], self._rows[pc])
        return r

    def add(self, vec: SparseVec) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        pc = min(r)
        inv = 1 / r[pc]
        self._rows[pc] = {c: v * inv for c, v in r.items()}
        return True

    def would_increase(self, vectors: Sequence[SparseVec]) -> int:
        """Rank gain from adding ``vectors`` without mutating this basis."""
        trial = EchelonBasis()
        trial._rows = {k: dict(v) for k, v in self._rows.items()}
        return sum(trial.add(v) for v in vectors)
