"""
Polynomials in x_1..x_d with coefficients in R_{0,d}.

Storage is a flat map ``(exponent tuple, blade mask) -> Fraction``.  The
variables are real and commute with everything; Clifford coefficients sit to
the left of the monomial, and products keep the left factor's coefficient on
the left.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from .clifford import Multivector, blade_product, conjugation_sign, parse_rational
from .errors import DecompositionError, DimensionMismatch, InternalConsistencyError

Exponent = Tuple[int, ...]
Key = Tuple[Exponent, int]


def monomials(d: int, degree: int) -> List[Exponent]:
    """All exponents of total degree ``degree`` in lexicographically descending order."""
    if degree < 0:
        return []
    if d == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(d - 1, degree - first):
            out.append((first,) + rest)
    return out


def _add_into(acc: Dict[Key, Fraction], key: Key, value: Fraction) -> None:
    v = acc.get(key)
    if v is None:
        acc[key] = value
    else:
        v += value
        if v:
            acc[key] = v
        else:
            del acc[key]


class CPoly:
    """Clifford-valued polynomial; immutable by convention."""

    __slots__ = ("d", "_c")

    def __init__(self, d: int, coeffs: Mapping[Key, object] | None = None):
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"dimension must be a positive integer, got {d!r}")
        self.d = d
        clean: Dict[Key, Fraction] = {}
        for (beta, mask), c in (coeffs or {}).items():
            if len(beta) != d:
                raise DimensionMismatch(f"exponent {beta} has wrong length for d={d}")
            c = c if isinstance(c, Fraction) else parse_rational(c)
            if c:
                clean[(tuple(beta), mask)] = c
        self._c = clean

    @classmethod
    def _raw(cls, d: int, coeffs: Dict[Key, Fraction]) -> "CPoly":
        # trusted constructor: caller guarantees normalized, zero-free data
        obj = cls.__new__(cls)
        obj.d = d
        obj._c = coeffs
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, d: int) -> "CPoly":
        return cls._raw(d, {})

    @classmethod
    def constant(cls, value, d: int | None = None) -> "CPoly":
        if isinstance(value, Multivector):
            return cls._raw(value.d, {((0,) * value.d, m): c for m, c in value.items()})
        if d is None:
            raise ValueError("dimension required for scalar constants")
        value = parse_rational(value)
        return cls._raw(d, {((0,) * d, 0): value} if value else {})

    @classmethod
    def variable(cls, d: int, i: int) -> "CPoly":
        """The real coordinate x_i (1-based) as a scalar-valued polynomial."""
        beta = [0] * d
        beta[i - 1] = 1
        return cls._raw(d, {(tuple(beta), 0): Fraction(1)})

    @classmethod
    def monomial(cls, beta: Sequence[int], coeff: Multivector | int | Fraction = 1) -> "CPoly":
        beta = tuple(beta)
        if isinstance(coeff, Multivector):
            if coeff.d != len(beta):
                raise DimensionMismatch("coefficient and exponent dimensions differ")
            return cls._raw(coeff.d, {(beta, m): c for m, c in coeff.items()})
        return cls(len(beta), {(beta, 0): coeff})

    @classmethod
    def from_terms(cls, d: int, terms: Mapping[Exponent, Multivector]) -> "CPoly":
        acc: Dict[Key, Fraction] = {}
        for beta, mv in terms.items():
            if mv.d != d:
                raise DimensionMismatch("coefficient dimension differs from polynomial")
            for m, c in mv.items():
                _add_into(acc, (tuple(beta), m), c)
        return cls._raw(d, acc)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, Multivector]:
        """Exponent -> Multivector view of the coefficients."""
        grouped: Dict[Exponent, Dict[int, Fraction]] = defaultdict(dict)
        for (beta, m), c in self._c.items():
            grouped[beta][m] = c
        return {beta: Multivector(self.d, t, allow_large=True) for beta, t in grouped.items()}

    def items(self):
        return self._c.items()

    def coefficient(self, beta: Sequence[int]) -> Multivector:
        beta = tuple(beta)
        return Multivector(self.d, {m: c for (b, m), c in self._c.items() if b == beta},
                           allow_large=True)

    def component(self, mask: int) -> Dict[Exponent, Fraction]:
        """Scalar polynomial sitting in front of blade ``mask``."""
        return {b: c for (b, m), c in self._c.items() if m == mask}

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(b) for (b, _) in self._c), default=-1)

    def degrees(self) -> set:
        return {sum(b) for (b, _) in self._c}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_axis_degree(self) -> Tuple[int, ...]:
        out = [0] * self.d
        for (b, _) in self._c:
            for i, e in enumerate(b):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def homogeneous_part(self, k: int) -> "CPoly":
        return CPoly._raw(self.d, {key: c for key, c in self._c.items() if sum(key[0]) == k})

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "CPoly") -> None:
        if self.d != other.d:
            raise DimensionMismatch(f"dimension mismatch: {self.d} vs {other.d}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Multivector)):
            other = CPoly.constant(other, self.d)
        if not isinstance(other, CPoly):
            return NotImplemented
        self._check(other)
        acc = dict(self._c)
        for k, c in other._c.items():
            _add_into(acc, k, c)
        return CPoly._raw(self.d, acc)

    __radd__ = __add__

    def __neg__(self):
        return CPoly._raw(self.d, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Multivector)):
            other = CPoly.constant(other, self.d)
        if not isinstance(other, CPoly):
            return NotImplemented
        self._check(other)
        acc = dict(self._c)
        for k, c in other._c.items():
            _add_into(acc, k, -c)
        return CPoly._raw(self.d, acc)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q) -> "CPoly":
        q = q if isinstance(q, Fraction) else parse_rational(q)
        if not q:
            return CPoly.zero(self.d)
        return CPoly._raw(self.d, {k: c * q for k, c in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.right_mul(other)
        if isinstance(other, CPoly):
            return poly_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.left_mul(other)
        return NotImplemented

    def left_mul(self, a: Multivector) -> "CPoly":
        """a * self, multiplying every coefficient on the left."""
        if a.d != self.d:
            raise DimensionMismatch("multivector and polynomial dimensions differ")
        acc: Dict[Key, Fraction] = {}
        for ma, ca in a.items():
            for (b, m), c in self._c.items():
                sign, mm = blade_product(ma, m)
                _add_into(acc, (b, mm), ca * c if sign > 0 else -(ca * c))
        return CPoly._raw(self.d, acc)

    def right_mul(self, a: Multivector) -> "CPoly":
        """self * a, multiplying every coefficient on the right."""
        if a.d != self.d:
            raise DimensionMismatch("multivector and polynomial dimensions differ")
        acc: Dict[Key, Fraction] = {}
        for (b, m), c in self._c.items():
            for ma, ca in a.items():
                sign, mm = blade_product(m, ma)
                _add_into(acc, (b, mm), ca * c if sign > 0 else -(ca * c))
        return CPoly._raw(self.d, acc)

    def left_mul_generator(self, i: int) -> "CPoly":
        """e_i * self for a 1-based generator index (fast path)."""
        bit = 1 << (i - 1)
        out = {}
        for (b, m), c in self._c.items():
            sign, mm = blade_product(bit, m)
            out[(b, mm)] = c if sign > 0 else -c
        return CPoly._raw(self.d, out)

    def mul_monomial(self, gamma: Exponent, q: Fraction = Fraction(1)) -> "CPoly":
        """Multiply by the scalar monomial q * x^gamma."""
        if not q:
            return CPoly.zero(self.d)
        return CPoly._raw(self.d, {(tuple(x + y for x, y in zip(b, gamma)), m): c * q
                                   for (b, m), c in self._c.items()})

    def mul_scalar_poly(self, s: Mapping[Exponent, Fraction]) -> "CPoly":
        """Multiply by a scalar-valued polynomial given as exponent -> rational."""
        acc: Dict[Key, Fraction] = {}
        for g, q in s.items():
            for (b, m), c in self._c.items():
                _add_into(acc, (tuple(x + y for x, y in zip(b, g)), m), c * q)
        return CPoly._raw(self.d, acc)

    def __pow__(self, k: int) -> "CPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = CPoly.constant(1, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Multivector)):
            other = CPoly.constant(other, self.d)
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.d == other.d and self._c == other._c

    def __hash__(self):
        return hash((self.d, frozenset(self._c.items())))

    # -- calculus and group action ---------------------------------------
    def diff(self, i: int) -> "CPoly":
        """Partial derivative with respect to x_i (1-based)."""
        k = i - 1
        out = {}
        for (b, m), c in self._c.items():
            e = b[k]
            if e:
                nb = b[:k] + (e - 1,) + b[k + 1:]
                out[(nb, m)] = c * e
        return CPoly._raw(self.d, out)

    def conjugate(self) -> "CPoly":
        """Clifford conjugation applied coefficientwise (variables are real)."""
        return CPoly._raw(self.d, {(b, m): c * conjugation_sign(m) for (b, m), c in self._c.items()})

    def substitute_linear(self, matrix: Sequence[Sequence[Fraction]]) -> "CPoly":
        """Return p(Mx): every x_i is replaced by sum_j M[i][j] x_j."""
        return _substitute_linear(self, tuple(tuple(Fraction(v) for v in row) for row in matrix))

    def reflect(self, alpha: Sequence) -> "CPoly":
        return poly_reflect(self, alpha)

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"CPoly(d={self.d}, {self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        terms = self.terms
        for beta in sorted(terms, key=lambda b: (-sum(b), tuple(-e for e in b))):
            mono = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                            for i, e in enumerate(beta) if e)
            coeff = str(terms[beta])
            if len(terms[beta].terms) > 1:
                coeff = f"({coeff})"
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        return " + ".join(parts)

    def to_json(self) -> dict:
        terms = []
        grouped = self.terms
        for beta in sorted(grouped):
            terms.append({"monomial": list(beta), "coeff": grouped[beta].to_json()})
        return {"d": self.d, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "CPoly":
        d = int(obj["d"])
        acc: Dict[Key, Fraction] = {}
        for t in obj.get("terms", []):
            beta = tuple(int(e) for e in t["monomial"])
            if len(beta) != d or min(beta, default=0) < 0:
                raise ValueError(f"bad monomial {t['monomial']!r} for d={d}")
            coeff = t["coeff"]
            if isinstance(coeff, Mapping):
                mv = Multivector.from_json(coeff)
                if mv.d != d:
                    raise DimensionMismatch("coefficient dimension differs from polynomial")
                for m, c in mv.items():
                    _add_into(acc, (beta, m), c)
            else:
                _add_into(acc, (beta, 0), parse_rational(coeff))
        return cls._raw(d, acc)


# -- free functions ------------------------------------------------------

def x_poly(d: int) -> CPoly:
    """The vector variable x = sum_i x_i e_i."""
    out = {}
    for i in range(d):
        beta = [0] * d
        beta[i] = 1
        out[(tuple(beta), 1 << i)] = Fraction(1)
    return CPoly._raw(d, out)


def r_squared(d: int) -> CPoly:
    """|x|^2 = x_1^2 + ... + x_d^2 as a scalar polynomial."""
    out = {}
    for i in range(d):
        beta = [0] * d
        beta[i] = 2
        out[(tuple(beta), 0)] = Fraction(1)
    return CPoly._raw(d, out)


def linear_form(alpha: Sequence) -> CPoly:
    """<alpha, x> as a scalar polynomial."""
    d = len(alpha)
    out = {}
    for i, a in enumerate(alpha):
        a = Fraction(a)
        if a:
            beta = [0] * d
            beta[i] = 1
            out[(tuple(beta), 0)] = a
    return CPoly._raw(d, out)


def poly_mul(p: CPoly, q: CPoly) -> CPoly:
    if p.d != q.d:
        raise DimensionMismatch(f"dimension mismatch: {p.d} vs {q.d}")
    acc: Dict[Key, Fraction] = {}
    for (b1, m1), c1 in p._c.items():
        for (b2, m2), c2 in q._c.items():
            sign, m = blade_product(m1, m2)
            v = c1 * c2
            _add_into(acc, (tuple(x + y for x, y in zip(b1, b2)), m), v if sign > 0 else -v)
    return CPoly._raw(p.d, acc)


def reflection_matrix(alpha: Sequence) -> Tuple[Tuple[Fraction, ...], ...]:
    """Matrix of sigma_alpha x = x - 2<x,alpha>/|alpha|^2 alpha."""
    alpha = [Fraction(a) for a in alpha]
    n2 = sum(a * a for a in alpha)
    if n2 == 0:
        raise ValueError("cannot reflect in the zero vector")
    d = len(alpha)
    return tuple(tuple((1 if i == j else 0) - 2 * alpha[i] * alpha[j] / n2 for j in range(d))
                 for i in range(d))


def _monomial_matrix(matrix) -> List[Tuple[int, Fraction]] | None:
    """If every row has a single nonzero entry return [(column, value)], else None."""
    out = []
    for row in matrix:
        nz = [(j, v) for j, v in enumerate(row) if v]
        if len(nz) != 1:
            return None
        out.append(nz[0])
    return out


@lru_cache(maxsize=4096)
def _linear_power(row: Tuple[Fraction, ...], e: int) -> Tuple[Tuple[Exponent, Fraction], ...]:
    """Expansion of (sum_j row[j] x_j)^e as a tuple of (exponent, coefficient)."""
    d = len(row)
    acc: Dict[Exponent, Fraction] = {(0,) * d: Fraction(1)}
    for _ in range(e):
        nxt: Dict[Exponent, Fraction] = {}
        for beta, c in acc.items():
            for j, v in enumerate(row):
                if v:
                    nb = beta[:j] + (beta[j] + 1,) + beta[j + 1:]
                    nxt[nb] = nxt.get(nb, 0) + c * v
        acc = {b: c for b, c in nxt.items() if c}
    return tuple(acc.items())


def _substitute_linear(p: CPoly, matrix) -> CPoly:
    d = p.d
    if len(matrix) != d or any(len(r) != d for r in matrix):
        raise DimensionMismatch("substitution matrix must be d x d")
    mono = _monomial_matrix(matrix)
    if mono is not None:
        # signed permutation: x_i -> v_i x_{col_i}
        out: Dict[Key, Fraction] = {}
        for (b, m), c in p._c.items():
            nb = [0] * d
            coef = c
            for i, e in enumerate(b):
                if e:
                    j, v = mono[i]
                    nb[j] += e
                    coef *= v ** e
            _add_into(out, (tuple(nb), m), coef)
        return CPoly._raw(d, out)
    acc: Dict[Key, Fraction] = {}
    expansions: Dict[Exponent, Dict[Exponent, Fraction]] = {}
    for (b, m), c in p._c.items():
        exp = expansions.get(b)
        if exp is None:
            cur: Dict[Exponent, Fraction] = {(0,) * d: Fraction(1)}
            for i, e in enumerate(b):
                if not e:
                    continue
                nxt: Dict[Exponent, Fraction] = {}
                for g1, c1 in cur.items():
                    for g2, c2 in _linear_power(matrix[i], e):
                        g = tuple(x + y for x, y in zip(g1, g2))
                        nxt[g] = nxt.get(g, 0) + c1 * c2
                cur = {g: v for g, v in nxt.items() if v}
            exp = expansions[b] = cur
        for g, v in exp.items():
            _add_into(acc, (g, m), c * v)
    return CPoly._raw(d, acc)


def poly_reflect(p: CPoly, alpha: Sequence) -> CPoly:
    """p(sigma_alpha x); coefficients are left untouched."""
    if len(alpha) != p.d:
        raise DimensionMismatch("root and polynomial dimensions differ")
    return _substitute_linear(p, reflection_matrix(alpha))


def divide_by_linear_form(p: CPoly, alpha: Sequence) -> CPoly:
    """Exact quotient p / <alpha, x>; raises if the division leaves a remainder.

    Long division in the pivot variable x_k (first index with alpha_k != 0),
    treating the remaining variables and the blade as coefficient data.
    """
    d = p.d
    alpha = [Fraction(a) for a in alpha]
    k = next((i for i, a in enumerate(alpha) if a), None)
    if k is None:
        raise ValueError("cannot divide by the zero linear form")
    ak = alpha[k]
    others = [(i, a) for i, a in enumerate(alpha) if a and i != k]
    # layers[e] : (exponent without x_k, mask) -> coefficient of x_k^e
    layers: Dict[int, Dict[Key, Fraction]] = defaultdict(dict)
    for (b, m), c in p._c.items():
        layers[b[k]][(b[:k] + (0,) + b[k + 1:], m)] = c
    if not layers:
        return CPoly.zero(d)
    top = max(layers)
    quotient: Dict[Key, Fraction] = {}
    for e in range(top, 0, -1):
        layer = layers.get(e)
        if not layer:
            continue
        below = layers[e - 1]
        for (b, m), c in layer.items():
            q = c / ak
            qb = b[:k] + (e - 1,) + b[k + 1:]
            quotient[(qb, m)] = q
            # subtract q * x_k^{e-1} * (sum_{i != k} alpha_i x_i)
            for i, a in others:
                nb = b[:i] + (b[i] + 1,) + b[i + 1:]
                _add_into(below, (nb, m), -q * a)
    remainder = layers.get(0)
    if remainder:
        raise InternalConsistencyError(
            "division by a linear form left a nonzero remainder",
            witness=CPoly._raw(d, dict(remainder)))
    return CPoly._raw(d, quotient)


def poly_divided_difference(p: CPoly, alpha: Sequence) -> CPoly:
    """(p(x) - p(sigma_alpha x)) / <alpha, x>, computed exactly."""
    numerator = p - poly_reflect(p, alpha)
    return divide_by_linear_form(numerator, alpha)


def x_power(d: int, j: int) -> CPoly:
    """Geometric power x^j of the vector variable.

    Uses x^2 = -|x|^2, so even powers are scalar and odd powers carry one x.
    """
    half = CPoly.constant(1, d)
    rr = r_squared(d)
    for _ in range(j // 2):
        half = half * rr
    half = half.scale(-1 if (j // 2) % 2 else 1)
    return x_poly(d) * half if j % 2 else half


def radial_decompose(p: CPoly, pn: CPoly) -> List[Fraction]:
    """Rational a_0..a_m with p = sum_j a_j x^j P_n, found by an exact solve.

    Raises :class:`DecompositionError` when ``p`` is not of that form.
    """
    from .linalg import solve_exact

    if p.d != pn.d:
        raise DimensionMismatch("polynomial dimensions differ")
    if pn.is_zero():
        raise DecompositionError("P_n must be nonzero")
    if p.is_zero():
        return []
    n = pn.degree()
    lowest_pn = min(pn.degrees())
    m = p.degree() - n
    if m < 0 or min(p.degrees()) < lowest_pn:
        raise DecompositionError("degree pattern incompatible with sum_j a_j x^j P_n")
    columns = [x_power(p.d, j) * pn for j in range(m + 1)]
    index: Dict[Key, int] = {}
    for col in columns:
        for key in col._c:
            index.setdefault(key, len(index))
    for key in p._c:
        if key not in index:
            raise DecompositionError(f"term {key} cannot come from sum_j a_j x^j P_n")
    rows: List[Dict[int, Fraction]] = [dict() for _ in range(len(index))]
    for j, col in enumerate(columns):
        for key, c in col._c.items():
            rows[index[key]][j] = c
    rhs = [Fraction(0)] * len(index)
    for key, c in p._c.items():
        rhs[index[key]] = c
    sol = solve_exact(rows, rhs, m + 1)
    if sol is None:
        raise DecompositionError("polynomial is not in R(P_n)")
    recon = CPoly.zero(p.d)
    for j, a in enumerate(sol):
        if a:
            recon = recon + columns[j].scale(a)
    if recon != p:
        raise InternalConsistencyError("radial decomposition failed to reconstruct", witness=recon - p)
    while sol and sol[-1] == 0:
        sol.pop()
    return sol


def from_radial(coeffs: Sequence, pn: CPoly) -> CPoly:
    """Inverse of :func:`radial_decompose`: sum_j coeffs[j] x^j P_n."""
    out = CPoly.zero(pn.d)
    for j, a in enumerate(coeffs):
        a = Fraction(a)
        if a:
            out = out + (x_power(pn.d, j) * pn).scale(a)
    return out


def homogeneous_basis_size(d: int, n: int) -> int:
    return comb(n + d - 1, d - 1)
