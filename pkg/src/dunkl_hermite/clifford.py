"""
Exact arithmetic in the real Clifford algebra R_{0,d}.

Basis blades e_A are indexed by a bitmask over {1..d}: bit ``i-1`` set means
e_i occurs in the (ascending) product.  Generators anticommute and square to
-1, so for a vector x = sum x_i e_i we have x*x = -|x|^2.

All coefficients are :class:`fractions.Fraction`; nothing here touches floats.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import DimensionMismatch

#: Largest dimension accepted unless ``allow_large=True`` is passed.
MAX_DIMENSION = 8


def _check_dimension(d: int, allow_large: bool = False) -> None:
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    if d > MAX_DIMENSION and not allow_large:
        raise ValueError(
            f"dimension {d} exceeds the default cap {MAX_DIMENSION}; "
            "pass allow_large=True to override")


@lru_cache(maxsize=None)
def blade_product(a: int, b: int) -> Tuple[int, int]:
    """Return ``(sign, mask)`` with e_a * e_b = sign * e_mask.

    The sign counts the transpositions needed to merge both ascending index
    lists, plus one factor -1 for every index present in both.
    """
    swaps = 0
    rest = a >> 1
    while rest:
        # every generator of a that sits to the right of a generator j of b
        # must be moved past it
        swaps += bin(rest & b).count("1")
        rest >>= 1
    swaps += bin(a & b).count("1")
    return (-1 if swaps & 1 else 1), a ^ b


def grade(mask: int) -> int:
    return bin(mask).count("1")


def conjugation_sign(mask: int) -> int:
    """Sign picked up by e_A under Clifford conjugation, (-1)^{k(k+1)/2}."""
    k = grade(mask)
    return -1 if (k * (k + 1) // 2) % 2 else 1


def mask_from_indices(indices: Iterable[int]) -> int:
    """Bitmask for the blade whose 1-based generator indices are given."""
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"blade indices are 1-based, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated index {i} in blade")
        mask |= bit
    return mask


def indices_from_mask(mask: int) -> list:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions or strings like ``"-3/4"``; reject floats.

    Floats are rejected on purpose: a binary float silently becomes an ugly
    rational and breaks exactness downstream.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'p/q' string")
    if isinstance(value, str):
        value = value.strip()
        if "." in value or "e" in value.lower():
            raise ValueError(f"rational strings must be of the form p/q, got {value!r}")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


class Multivector:
    """An element of R_{0,d} with rational components.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("d", "_terms", "_hash")

    def __init__(self, d: int, terms: Mapping[int, object] | None = None,
                 *, allow_large: bool = False):
        _check_dimension(d, allow_large)
        self.d = d
        clean: Dict[int, Fraction] = {}
        top = 1 << d
        for mask, c in (terms or {}).items():
            if not 0 <= mask < top:
                raise ValueError(f"blade mask {mask} out of range for d={d}")
            c = c if isinstance(c, Fraction) else parse_rational(c)
            if c:
                clean[mask] = c
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def scalar(cls, d: int, value=1) -> "Multivector":
        return cls(d, {0: value})

    @classmethod
    def basis(cls, d: int, *indices: int) -> "Multivector":
        """e_{i1} e_{i2} ... for 1-based indices (product taken in the given order)."""
        out = cls.scalar(d)
        for i in indices:
            if not 1 <= i <= d:
                raise ValueError(f"generator index {i} out of range for d={d}")
            out = out * cls(d, {1 << (i - 1): 1})
        return out

    @classmethod
    def blade(cls, d: int, mask: int, coeff=1) -> "Multivector":
        return cls(d, {mask: coeff})

    @classmethod
    def vector(cls, components: Sequence) -> "Multivector":
        d = len(components)
        return cls(d, {1 << i: c for i, c in enumerate(components)})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, mask: int) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_vector(self) -> bool:
        return all(grade(m) == 1 for m in self._terms)

    def vector_components(self) -> Tuple[Fraction, ...]:
        if not self.is_vector():
            raise ValueError("multivector is not a pure vector")
        return tuple(self[1 << i] for i in range(self.d))

    def norm_squared(self) -> Fraction:
        """Sum of squared components, i.e. sc[conj(a) a]."""
        return sum((c * c for c in self._terms.values()), Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _same_dim(self, other: "Multivector") -> None:
        if self.d != other.d:
            raise DimensionMismatch(f"dimension mismatch: {self.d} vs {other.d}")

    def _coerce(self, other):
        if isinstance(other, Multivector):
            self._same_dim(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Multivector.scalar(self.d, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.d, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.d, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Multivector(self.d, {m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Multivector.scalar(self.d, other)
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, frozenset(self._terms.items())))
        return self._hash

    def conjugate(self) -> "Multivector":
        return conjugate(self)

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"Multivector({self.d}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda k: (grade(k), k)):
            c = self._terms[m]
            name = "e" + "".join(str(i) for i in indices_from_mask(m)) if m else ""
            coeff = format_rational(c)
            if name and c == 1:
                parts.append(name)
            elif name and c == -1:
                parts.append("-" + name)
            elif name:
                parts.append(f"{coeff}*{name}")
            else:
                parts.append(coeff)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        terms = [{"blade": indices_from_mask(m), "coeff": format_rational(c)}
                 for m, c in sorted(self._terms.items())]
        return {"d": self.d, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Multivector":
        d = int(obj["d"])
        acc: Dict[int, Fraction] = {}
        for t in obj.get("terms", []):
            m = mask_from_indices(t["blade"])
            acc[m] = acc.get(m, 0) + parse_rational(t["coeff"])
        return cls(d, acc, allow_large=d > MAX_DIMENSION)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    if a.d != b.d:
        raise DimensionMismatch(f"dimension mismatch: {a.d} vs {b.d}")
    out: Dict[int, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            sign, m = blade_product(ma, mb)
            v = ca * cb
            out[m] = out.get(m, 0) + (v if sign > 0 else -v)
    return Multivector(a.d, out)


def conjugate(a: Multivector) -> Multivector:
    return Multivector(a.d, {m: c * conjugation_sign(m) for m, c in a._terms.items()})


def vector_inverse(x: Multivector) -> Multivector:
    """x^{-1} = conj(x)/|x|^2 = -x/|x|^2 for a nonzero pure vector."""
    if not x.is_vector():
        raise ValueError("vector_inverse requires a pure grade-1 multivector")
    n2 = x.norm_squared()
    if n2 == 0:
        raise ZeroDivisionError("the zero vector has no inverse")
    return x * (Fraction(-1) / n2)


def reflect_vector(x: Sequence, alpha: Sequence) -> Tuple[Fraction, ...]:
    """Reflect ``x`` in the hyperplane orthogonal to ``alpha``.

    Coordinate form x - 2<x,a>/|a|^2 a, which equals -a x a^{-1} in R_{0,d}.
    """
    if len(x) != len(alpha):
        raise DimensionMismatch("x and alpha have different lengths")
    alpha = [Fraction(a) for a in alpha]
    n2 = sum(a * a for a in alpha)
    if n2 == 0:
        raise ValueError("cannot reflect in the zero vector")
    t = 2 * sum(Fraction(xi) * a for xi, a in zip(x, alpha)) / n2
    return tuple(Fraction(xi) - t * a for xi, a in zip(x, alpha))


def reflect_clifford(x: Multivector, alpha: Multivector) -> Multivector:
    """Clifford-algebra form of the reflection, -alpha x alpha^{-1}."""
    return -(alpha * x * vector_inverse(alpha))
