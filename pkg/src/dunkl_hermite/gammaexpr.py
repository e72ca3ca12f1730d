"""
Exact symbolic sums of Gamma-value monomials.

A :class:`GammaExpr` is a finite sum of terms

    c * pi^(p/2) * prod_a Gamma(a)^e_a

with rational ``c``, integer ``p`` and ``e_a``, and every base ``a`` a rational
in (0, 1) other than 1/2.  Construction normalises through
Gamma(z + 1) = z Gamma(z): Gamma(1) folds into ``c`` and Gamma(1/2) becomes
pi^(1/2).  Equal normal forms imply equal values; the converse is not claimed
(relations such as the reflection formula are not applied).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .clifford import format_rational, parse_rational

GammaKey = Tuple[int, Tuple[Tuple[Fraction, int], ...]]

HALF = Fraction(1, 2)


def reduce_gamma(z) -> Tuple[Fraction, Fraction]:
    """Write Gamma(z) = factor * Gamma(a) with a in (0, 1]; returns (factor, a)."""
    z = Fraction(z)
    if z <= 0 and z.denominator == 1:
        raise ValueError(f"Gamma has a pole at {z}")
    a = z - math.floor(z)
    if a == 0:
        a = Fraction(1)
    k = int(z - a)
    factor = Fraction(1)
    if k > 0:
        for i in range(k):
            factor *= a + i
    elif k < 0:
        for i in range(k, 0):
            factor /= a + i
    return factor, a


def gamma_ratio(z, w) -> Fraction:
    """Gamma(z) / Gamma(w) for arguments differing by an integer."""
    fz, az = reduce_gamma(z)
    fw, aw = reduce_gamma(w)
    if az != aw:
        raise ValueError(f"Gamma({z})/Gamma({w}) is not rational in this form")
    return fz / fw


def _merge(gammas: Dict[Fraction, int], a: Fraction, e: int) -> None:
    new = gammas.get(a, 0) + e
    if new:
        gammas[a] = new
    else:
        gammas.pop(a, None)


class GammaExpr:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GammaKey, Fraction] | None = None):
        self._terms: Dict[GammaKey, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "GammaExpr":
        return cls()

    @classmethod
    def rational(cls, c) -> "GammaExpr":
        return cls({(0, ()): Fraction(c)})

    @classmethod
    def pi_half(cls, p: int, c=1) -> "GammaExpr":
        """c * pi^(p/2)."""
        return cls({(int(p), ()): Fraction(c)})

    @classmethod
    def gamma(cls, z, power: int = 1, c=1) -> "GammaExpr":
        """c * Gamma(z)^power, normalised."""
        return cls.monomial(c, 0, [(z, power)])

    @classmethod
    def monomial(cls, c, pi_half_power: int, gammas: Iterable[Tuple[object, int]]) -> "GammaExpr":
        c = Fraction(c)
        p = int(pi_half_power)
        bases: Dict[Fraction, int] = {}
        for z, e in gammas:
            e = int(e)
            if not e:
                continue
            factor, a = reduce_gamma(z)
            c *= factor ** e
            if a == 1:
                continue
            if a == HALF:
                p += e
            else:
                _merge(bases, a, e)
        return cls({(p, tuple(sorted(bases.items()))): c})

    # -- inspection -------------------------------------------------------
    def terms(self) -> Dict[GammaKey, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def ratio(self, other: "GammaExpr") -> Fraction | None:
        """Rational q with self == q * other, or None if no such q is visible."""
        if other.is_zero():
            raise ZeroDivisionError("ratio to a zero GammaExpr")
        if self.is_zero():
            return Fraction(0)
        if set(self._terms) != set(other._terms):
            return None
        qs = {self._terms[k] / other._terms[k] for k in self._terms}
        return qs.pop() if len(qs) == 1 else None

    def evaluate(self) -> float:
        total = 0.0
        for (p, gammas), c in self._terms.items():
            # log-space keeps large Gamma products finite
            log = (p / 2) * math.log(math.pi)
            for a, e in gammas:
                log += e * math.lgamma(float(a))
            total += float(c) * math.exp(log)
        return total

    __float__ = evaluate

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> "GammaExpr":
        if isinstance(other, GammaExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return GammaExpr.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return GammaExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return GammaExpr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GammaExpr({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, GammaExpr):
            return NotImplemented
        out = GammaExpr()
        for (p1, g1), c1 in self._terms.items():
            for (p2, g2), c2 in other._terms.items():
                bases = dict(g1)
                for a, e in g2:
                    _merge(bases, a, e)
                out = out + GammaExpr({(p1 + p2, tuple(sorted(bases.items()))): c1 * c2})
        return out

    __rmul__ = __mul__

    def inverse(self) -> "GammaExpr":
        """Multiplicative inverse; only monomials are invertible here."""
        if len(self._terms) != 1:
            raise ValueError("only single-term GammaExpr values can be inverted")
        (p, gammas), c = next(iter(self._terms.items()))
        return GammaExpr({(-p, tuple((a, -e) for a, e in gammas)): 1 / c})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, GammaExpr):
            return self * other.inverse()
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- text and JSON ----------------------------------------------------
    def _sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (p, gammas), c in self._sorted_terms():
            factors = [format_rational(c)]
            if p:
                factors.append(f"pi^({p}/2)")
            for a, e in gammas:
                factors.append(f"Gamma({format_rational(a)})" + (f"^({e})" if e != 1 else ""))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"GammaExpr({self})"

    def to_text(self) -> str:
        return str(self)

    _FACTOR = re.compile(
        r"^(?:pi(?:\^\((?P<pp>-?\d+)/2\))?|Gamma\((?P<g>[^()]+)\)(?:\^\(?(?P<ge>-?\d+)\)?)?|(?P<q>-?\d+(?:/\d+)?))$")

    @classmethod
    def from_text(cls, text: str) -> "GammaExpr":
        """Parse the text form produced by :meth:`to_text`.

        ``Gamma(z)`` arguments need not be reduced; ``pi`` alone means pi^(2/2).
        """
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for chunk in re.split(r"\s\+\s", text):
            c = Fraction(1)
            p = 0
            gammas = []
            for factor in chunk.split("*"):
                factor = factor.strip()
                m = cls._FACTOR.match(factor)
                if not m:
                    raise ValueError(f"cannot parse GammaExpr factor {factor!r}")
                if m.group("q") is not None:
                    c *= parse_rational(m.group("q"))
                elif m.group("g") is not None:
                    gammas.append((parse_rational(m.group("g")), int(m.group("ge") or 1)))
                else:
                    p += int(m.group("pp")) if m.group("pp") is not None else 2
            out = out + cls.monomial(c, p, gammas)
        return out

    def to_json(self) -> list:
        return [{"coeff": format_rational(c), "pi_half_power": p,
                 "gammas": [{"arg": format_rational(a), "power": e} for a, e in gammas]}
                for (p, gammas), c in self._sorted_terms()]

    @classmethod
    def from_json(cls, obj) -> "GammaExpr":
        out = cls()
        for t in obj:
            out = out + cls.monomial(parse_rational(t["coeff"]), int(t.get("pi_half_power", 0)),
                                     [(parse_rational(g["arg"]), int(g.get("power", 1)))
                                      for g in t.get("gammas", [])])
        return out

