"""Exact scalar rings.

``Fraction`` is the rational field.  ``LambdaPoly`` is a polynomial in the
genus parameter lambda, and ``ExpPoly`` is a finite sum of terms
``c * lam**k * exp(P(lam))`` with ``P`` a ``LambdaPoly``.  The functions
``lam**k * exp(P)`` are linearly independent over the rationals for distinct
pairs ``(k, P)``, so an ``ExpPoly`` in canonical form is zero exactly when it
has no terms.  Constant terms of ``P`` are kept symbolic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Rational = Union[int, Fraction]


def frac_str(x: Rational) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when q = 1)."""
    return str(Fraction(x))


def parse_frac(text: str) -> Fraction:
    return Fraction(text)


class LambdaPoly:
    """Polynomial in lambda with rational coefficients (no zero terms stored)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, Rational], Iterable[Tuple[int, Rational]], None] = None):
        acc: Dict[int, Fraction] = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for e, c in items:
                if e < 0:
                    raise ValueError("LambdaPoly exponents must be non-negative")
                acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        self._terms: Tuple[Tuple[int, Fraction], ...] = tuple(
            sorted((e, c) for e, c in acc.items() if c != 0)
        )
        self._hash = hash(self._terms)

    @classmethod
    def constant(cls, c: Rational) -> "LambdaPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Rational = 1) -> "LambdaPoly":
        return cls({e: c})

    @property
    def terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self._terms

    def coeff(self, e: int) -> Fraction:
        for ee, c in self._terms:
            if ee == e:
                return c
        return Fraction(0)

    @property
    def degree(self) -> int:
        return self._terms[-1][0] if self._terms else -1

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "LambdaPoly") -> "LambdaPoly":
        if not isinstance(other, LambdaPoly):
            other = LambdaPoly.constant(other)
        return LambdaPoly(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "LambdaPoly":
        return LambdaPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other: "LambdaPoly") -> "LambdaPoly":
        if not isinstance(other, LambdaPoly):
            other = LambdaPoly.constant(other)
        return self + (-other)

    def __mul__(self, other: Union["LambdaPoly", Rational]) -> "LambdaPoly":
        if not isinstance(other, LambdaPoly):
            return LambdaPoly((e, c * other) for e, c in self._terms)
        return LambdaPoly(
            (e1 + e2, c1 * c2) for e1, c1 in self._terms for e2, c2 in other._terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LambdaPoly":
        out = LambdaPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LambdaPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LambdaPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LambdaPoly") -> bool:
        return self._terms < other._terms

    def __call__(self, lam):
        """Evaluate at ``lam`` (any object supporting ``*`` and ``**``)."""
        total = 0
        for e, c in self._terms:
            total = total + c * lam**e
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*lam^{e}" if e else f"{c}" for e, c in self._terms)

    def to_json(self) -> Dict[str, str]:
        return {str(e): frac_str(c) for e, c in self._terms}


ZERO_POLY = LambdaPoly()

_Key = Tuple[int, LambdaPoly]


class ExpPoly:
    """Canonical finite sum of ``c * lam**k * exp(P(lam))`` terms.

    Terms are merged on ``(k, P)`` and zero coefficients are dropped on
    construction, so canonical forms compare with ``==``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[_Key, Rational], Iterable[Tuple[_Key, Rational]], None] = None):
        acc: Dict[_Key, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._terms: Dict[_Key, Fraction] = {k: c for k, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def term(cls, c: Rational = 1, k: int = 0, P: LambdaPoly = ZERO_POLY) -> "ExpPoly":
        return cls({(k, P): c})

    @classmethod
    def constant(cls, c: Rational) -> "ExpPoly":
        return cls.term(c)

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls()

    @classmethod
    def one(cls) -> "ExpPoly":
        return cls.term(1)

    def items(self) -> Iterator[Tuple[_Key, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def canonical(self) -> Tuple[Tuple[int, Tuple, Fraction], ...]:
        """Sorted term tuple; a stable, hashable normal form."""
        return tuple(sorted((k, P.terms, c) for (k, P), c in self._terms.items()))

    def __add__(self, other: Union["ExpPoly", Rational]) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other)
        return ExpPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "ExpPoly":
        return ExpPoly({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: Union["ExpPoly", Rational]) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Rational) -> "ExpPoly":
        return ExpPoly.constant(other) - self

    def __mul__(self, other: Union["ExpPoly", Rational]) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            other = Fraction(other)
            return ExpPoly({key: c * other for key, c in self._terms.items()})
        return ExpPoly(
            ((k1 + k2, P1 + P2), c1 * c2)
            for (k1, P1), c1 in self._terms.items()
            for (k2, P2), c2 in other._terms.items()
        )

    __rmul__ = __mul__

    def shift(self, k: int = 0, P: LambdaPoly = ZERO_POLY, c: Rational = 1) -> "ExpPoly":
        """Multiply by the single term ``c * lam**k * exp(P)``."""
        c = Fraction(c)
        return ExpPoly(((k0 + k, P0 + P), c0 * c) for (k0, P0), c0 in self._terms.items())

    def inverse(self) -> "ExpPoly":
        if len(self._terms) != 1:
            raise ZeroDivisionError("only single-term ExpPoly values are invertible")
        ((k, P), c), = self._terms.items()
        return ExpPoly.term(1 / c, -k, -P)

    def __truediv__(self, other: Union["ExpPoly", Rational]) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExpPoly.constant(other)
        if isinstance(other, ExpPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.canonical())
        return self._hash

    def evaluate(self, lam, exp):
        """Evaluate with a caller-supplied ``exp`` (e.g. ``mpmath.exp``)."""
        total = 0
        for (k, P), c in self._terms.items():
            total = total + c * lam**k * exp(P(lam))
        return total

    def to_json(self) -> list:
        return [
            {"c": frac_str(c), "k": k, "P": P.to_json()}
            for (k, P), c in sorted(self._terms.items(), key=lambda kv: (kv[0][0], kv[0][1].terms))
        ]

    def __repr__(self) -> str:
        if not self._terms:
            return "ExpPoly(0)"
        parts = []
        for k, Pt, c in self.canonical():
            parts.append(f"{c}*lam^{k}*exp({LambdaPoly(Pt)})")
        return "ExpPoly(" + " + ".join(parts) + ")"


def expoly_add(a: ExpPoly, b: ExpPoly) -> ExpPoly:
    return a + b


def expoly_mul(a: ExpPoly, b: ExpPoly) -> ExpPoly:
    return a * b


def expoly_is_zero(a: ExpPoly) -> bool:
    return a.is_zero()


class Ring:
    """Coefficient ring descriptor used by the series engine."""

    def __init__(self, name: str, zero, one, from_rational):
        self.name = name
        self.zero = zero
        self.one = one
        self.from_rational = from_rational

    def is_zero(self, c) -> bool:
        return c == 0 if not isinstance(c, ExpPoly) else c.is_zero()

    def inverse(self, c):
        if isinstance(c, ExpPoly):
            return c.inverse()
        return 1 / Fraction(c)

    def __repr__(self) -> str:
        return f"Ring({self.name})"


QQ = Ring("QQ", Fraction(0), Fraction(1), Fraction)
EXPPOLY = Ring("ExpPoly", ExpPoly.zero(), ExpPoly.one(), ExpPoly.constant)
