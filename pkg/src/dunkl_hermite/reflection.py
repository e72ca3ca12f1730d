"""
Root systems, finite reflection groups and multiplicity functions.

Supported families (all with rational roots, so every reflection matrix is
rational):

``Z2^d``   roots +-e_i; W = (Z_2)^d; one multiplicity per axis.
``A``      roots e_i - e_j in R^d (type A_{d-1}); one orbit.
``B``      roots +-e_i, +-e_i +- e_j; orbits ordered (short e_i, long e_i +- e_j).
``I2``     dihedral group of order 2m for m in {2, 3, 4, 6}.  m = 2, 4 live in
           R^2; m = 3, 6 are realised on the plane x1 + x2 + x3 = 0 in R^3,
           because a rational realisation in R^2 does not exist for them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .clifford import format_rational, parse_rational
from .errors import ConfigError
from .multipoly import reflection_matrix

Vec = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]

FAMILY_ALIASES = {
    "z2^d": "Z2^d", "z2": "Z2^d", "z2d": "Z2^d",
    "a": "A", "a_{d-1}": "A", "a_d-1": "A",
    "b": "B", "b_d": "B",
    "i2": "I2", "i2(m)": "I2",
}


def normalize_family(name: str) -> str:
    key = str(name).strip().lower()
    if key not in FAMILY_ALIASES:
        raise ConfigError(f"unknown reflection group family {name!r}; "
                          "expected one of Z2^d, A, B, I2")
    return FAMILY_ALIASES[key]


def _vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def _unit(d: int, i: int, scale=1) -> Vec:
    return tuple(Fraction(scale) if j == i else Fraction(0) for j in range(d))


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0))
                       for j in range(n)) for i in range(n))


def _matvec(a: Matrix, v: Sequence) -> Vec:
    return tuple(_dot(row, v) for row in a)


def _identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def _positive_half(roots: List[Vec]) -> List[Vec]:
    """Pick the positive system with a deterministic generic beta.

    beta = (d, d-1, ..., 1) first; if it lies on a mirror, fall back to
    beta_i = (d+1)^(d-i).
    """
    d = len(roots[0])
    candidates = [tuple(Fraction(d - i) for i in range(d)),
                  tuple(Fraction((d + 1) ** (d - 1 - i)) for i in range(d))]
    for beta in candidates:
        if all(_dot(a, beta) != 0 for a in roots):
            return [a for a in roots if _dot(a, beta) > 0]
    raise ConfigError("no generic vector found for the positive system")


def _roots_for(family: str, size: int) -> List[Vec]:
    roots: List[Vec] = []
    if family == "Z2^d":
        d = size
        for i in range(d):
            roots += [_unit(d, i), _unit(d, i, -1)]
    elif family == "A":
        d = size
        if d < 2:
            raise ConfigError("type A needs d >= 2")
        for i in range(d):
            for j in range(d):
                if i != j:
                    roots.append(tuple(Fraction((k == i) - (k == j)) for k in range(d)))
    elif family == "B":
        d = size
        if d < 2:
            raise ConfigError("type B needs d >= 2")
        for i in range(d):
            roots += [_unit(d, i), _unit(d, i, -1)]
        for i in range(d):
            for j in range(i + 1, d):
                for si in (1, -1):
                    for sj in (1, -1):
                        roots.append(tuple(Fraction(si * (k == i) + sj * (k == j)) for k in range(d)))
    elif family == "I2":
        m = size
        if m == 2:
            roots = [_vec(1, 0), _vec(-1, 0), _vec(0, 1), _vec(0, -1)]
        elif m == 4:
            roots = [_vec(1, 0), _vec(-1, 0), _vec(0, 1), _vec(0, -1),
                     _vec(1, 1), _vec(-1, -1), _vec(1, -1), _vec(-1, 1)]
        elif m in (3, 6):
            for i in range(3):
                for j in range(3):
                    if i != j:
                        roots.append(tuple(Fraction((k == i) - (k == j)) for k in range(3)))
            if m == 6:
                for i in range(3):
                    v = tuple(Fraction(2 if k == i else -1) for k in range(3))
                    roots += [v, tuple(-x for x in v)]
        else:
            raise ConfigError(f"I2(m) has no rational realisation for m={m}; supported m: 2, 3, 4, 6")
    else:
        raise ConfigError(f"unknown family {family!r}")
    return roots


def _group_closure(generators: List[Matrix], limit: int = 100_000) -> List[Matrix]:
    d = len(generators[0])
    seen = {_identity(d)}
    frontier = [_identity(d)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = _matmul(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise ConfigError("group closure exceeded the size limit; group is not finite?")
        frontier = nxt
    return sorted(seen)


def _root_orbits(roots: List[Vec], reflections: List[Matrix]) -> List[List[Vec]]:
    remaining = list(roots)
    orbits = []
    while remaining:
        start = remaining[0]
        orbit = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for s in reflections:
                b = _matvec(s, a)
                if b not in orbit:
                    orbit.add(b)
                    stack.append(b)
        orbits.append([r for r in roots if r in orbit])
        remaining = [r for r in remaining if r not in orbit]
    return orbits


@dataclass(frozen=True)
class ReflectionData:
    family: str
    size: int
    d: int
    roots: Tuple[Vec, ...]
    positive: Tuple[Vec, ...]
    kappa: Tuple[Fraction, ...]          # aligned with ``positive``
    group: Tuple[Matrix, ...] = field(repr=False)
    orbit_of: Tuple[int, ...] = field(repr=False)   # orbit index per positive root
    orbit_kappa: Tuple[Fraction, ...] = ()

    @property
    def gamma_kappa(self) -> Fraction:
        return sum(self.kappa, Fraction(0))

    @property
    def mu(self) -> Fraction:
        return 2 * self.gamma_kappa + self.d

    @property
    def is_z2(self) -> bool:
        return self.family == "Z2^d" or (self.family == "I2" and self.size == 2)

    def axis_kappa(self) -> Tuple[Fraction, ...]:
        """Per-axis multiplicities for the Z2^d family (root e_i -> kappa_i)."""
        if not self.is_z2:
            raise ValueError("axis multiplicities only exist for Z2^d")
        out = [Fraction(0)] * self.d
        for a, k in zip(self.positive, self.kappa):
            i = next(j for j, v in enumerate(a) if v)
            out[i] = k
        return tuple(out)

    def kappa_of(self, alpha: Sequence) -> Fraction:
        alpha = tuple(Fraction(a) for a in alpha)
        for a, k in zip(self.positive, self.kappa):
            if a == alpha or tuple(-x for x in a) == alpha:
                return k
        raise KeyError(f"{alpha} is not a root")

    def label(self) -> str:
        ks = ",".join(format_rational(k) for k in self.orbit_kappa)
        if self.family == "I2":
            return f"I2({self.size}) kappa=({ks})"
        return f"{self.family} d={self.d} kappa=({ks})"

    def to_config(self) -> dict:
        key = "m" if self.family == "I2" else "d"
        return {"family": self.family, key: self.size,
                "kappa": [format_rational(k) for k in self.orbit_kappa]}


def build_group(family: str, size: int, kappa, *, allow_zero: bool = False) -> ReflectionData:
    """Build roots, positive system, group and multiplicities.

    ``kappa`` is either one value per orbit (orbits ordered by first
    appearance in the positive system), one value per positive root (checked
    for W-invariance), or a single value broadcast to every orbit.
    """
    family = normalize_family(family)
    if not isinstance(size, int) or size < 1:
        raise ConfigError(f"size parameter must be a positive integer, got {size!r}")
    if isinstance(kappa, (str, int, Fraction)):
        kappa = [kappa]
    try:
        kappa = [parse_rational(k) for k in kappa]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad multiplicity value: {exc}") from exc
    if any(k < 0 for k in kappa):
        raise ConfigError("multiplicities must be nonnegative")

    roots = _roots_for(family, size)
    d = len(roots[0])
    positive = _positive_half(roots)
    reflections = [reflection_matrix(a) for a in positive]
    group = _group_closure(reflections)
    orbits = _root_orbits(roots, reflections)
    # order orbits by first appearance in the positive system
    pos_orbit = []
    orbit_index: Dict[int, int] = {}
    for a in positive:
        raw = next(i for i, o in enumerate(orbits) if a in o)
        if raw not in orbit_index:
            orbit_index[raw] = len(orbit_index)
        pos_orbit.append(orbit_index[raw])
    n_orbits = len(orbit_index)

    if len(kappa) == 1:
        orbit_kappa = kappa * n_orbits
    elif len(kappa) == n_orbits:
        orbit_kappa = list(kappa)
    elif len(kappa) == len(positive):
        orbit_kappa = [None] * n_orbits
        for k, o in zip(kappa, pos_orbit):
            if orbit_kappa[o] is None:
                orbit_kappa[o] = k
            elif orbit_kappa[o] != k:
                raise ConfigError("multiplicity is not W-invariant: roots in one orbit "
                                  "received different values")
    else:
        raise ConfigError(f"{family} with size {size} has {n_orbits} root orbit(s) and "
                          f"{len(positive)} positive roots; got {len(kappa)} multiplicities")
    pos_kappa = tuple(orbit_kappa[o] for o in pos_orbit)
    if sum(pos_kappa) <= 0 and not allow_zero:
        raise ConfigError("gamma_kappa must be positive (sum of multiplicities over R+)")
    return ReflectionData(family=family, size=size, d=d, roots=tuple(roots),
                          positive=tuple(positive), kappa=pos_kappa, group=tuple(group),
                          orbit_of=tuple(pos_orbit), orbit_kappa=tuple(orbit_kappa))


def from_config(cfg: dict, *, allow_zero: bool = False) -> ReflectionData:
    """Build from ``{"family": ..., "d" | "m": ..., "kappa": [...]}``."""
    family = normalize_family(cfg.get("family", "Z2^d"))
    size = cfg.get("m") if family == "I2" else cfg.get("d")
    if size is None:
        raise ConfigError("group config needs 'd' (or 'm' for I2)")
    kappa = cfg.get("kappa")
    if kappa is None:
        raise ConfigError("group config needs 'kappa'")
    if isinstance(kappa, str):
        kappa = [k for k in kappa.split(",") if k.strip()]
    return build_group(family, int(size), kappa, allow_zero=allow_zero)


def weight_eval(rd: ReflectionData, x: Sequence[float]) -> float:
    """h_kappa(x)^2 = prod_{alpha in R+} |<alpha, x>|^{2 kappa(alpha)} as a float."""
    out = 1.0
    for a, k in zip(rd.positive, rd.kappa):
        if k == 0:
            continue
        t = abs(sum(float(ai) * float(xi) for ai, xi in zip(a, x)))
        out *= t ** (2 * float(k))
    return out


def weight_eval_exact(rd: ReflectionData, x: Sequence) -> Fraction:
    """Exact weight, available when every 2 kappa(alpha) is an integer."""
    out = Fraction(1)
    for a, k in zip(rd.positive, rd.kappa):
        e = 2 * k
        if e.denominator != 1:
            raise ValueError("exact weight needs integer 2*kappa")
        out *= abs(_dot(a, [Fraction(v) for v in x])) ** int(e)
    return out


def apply(w: Matrix, x: Sequence) -> Vec:
    return _matvec(w, [Fraction(v) for v in x])


def weight_batch(rd: ReflectionData, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    out = np.ones(pts.shape[0])
    for a, k in zip(rd.positive, rd.kappa):
        if k == 0:
            continue
        t = np.abs(pts @ np.array([float(v) for v in a]))
        e = 2 * k
        out *= t ** int(e) if e.denominator == 1 else t ** float(e)
    return out
