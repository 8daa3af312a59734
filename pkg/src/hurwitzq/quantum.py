"""Quantum curves acting on principally specialised partition functions.

Operators are formal sums of words in three generators acting on series in
``x`` with ``ExpPoly`` coefficients:

* ``MulX(a)``   multiply by ``x^a`` (``a`` a half-integer),
* ``Y``         ``y = lam x d/dx``, so ``x^e -> lam e x^e``,
* ``ExpDiag(R)`` ``x^e -> exp(R(lam, lam e)) x^e`` for a polynomial ``R(lam, y)``.

Every exponential occurring in the curves is diagonal once the inner
operator is normal ordered with ``y x^a = x^a (y + a lam)``, which is what
:func:`exp_of` does.  Words are written left to right and applied right to
left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .rings import ExpPoly, LambdaPoly, Rational
from .report import CheckResult
from .series import TruncSeries, exp_series
from .spectral import SpectralFamily, y_series

HALF = Fraction(1, 2)


class QuantumError(ValueError):
    pass


# -- polynomials in (lam, y) ----------------------------------------------------

class BiPoly:
    """Polynomial in ``lam`` and ``y``; ``{(a, b): c}`` means ``c lam^a y^b``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Rational]] = None):
        self.terms: Dict[Tuple[int, int], Fraction] = {
            k: Fraction(v) for k, v in (terms or {}).items() if v != 0
        }

    @classmethod
    def y(cls, c: Rational = 1) -> "BiPoly":
        return cls({(0, 1): c})

    @classmethod
    def lam(cls, c: Rational = 1) -> "BiPoly":
        return cls({(1, 0): c})

    @classmethod
    def const(cls, c: Rational) -> "BiPoly":
        return cls({(0, 0): c})

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: Union["BiPoly", Rational]) -> "BiPoly":
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        out: Dict[Tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def at_exponent(self, e: Fraction) -> LambdaPoly:
        """``R(lam, lam e)`` as a polynomial in ``lam``."""
        return LambdaPoly(((a + b, c * Fraction(e) ** b) for (a, b), c in self.terms.items()))

    def symbol(self) -> Dict[int, Fraction]:
        """``R(0, y)`` as ``{power of y: coefficient}``."""
        return {b: c for (a, b), c in self.terms.items() if a == 0}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*lam^{a}*y^{b}" for (a, b), c in sorted(self.terms.items()))


# -- generators, words, expressions -----------------------------------------------

@dataclass(frozen=True)
class MulX:
    a: Fraction

    def __post_init__(self):
        a = Fraction(self.a)
        if (2 * a).denominator != 1:
            raise QuantumError(f"x-exponent {a} is not on the half-integer grid")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class Y:
    pass


@dataclass(frozen=True)
class ExpDiag:
    R: BiPoly


Generator = Union[MulX, Y, ExpDiag]


@dataclass(frozen=True)
class Word:
    gens: Tuple[Generator, ...]
    scalar: ExpPoly = field(default_factory=ExpPoly.one)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.gens + other.gens, self.scalar * other.scalar)

    def scaled(self, c) -> "Word":
        if not isinstance(c, ExpPoly):
            c = ExpPoly.constant(c)
        return Word(self.gens, self.scalar * c)


@dataclass(frozen=True)
class OperatorExpr:
    words: Tuple[Word, ...]

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.words + other.words)

    def __neg__(self) -> "OperatorExpr":
        return OperatorExpr(tuple(w.scaled(-1) for w in self.words))

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(tuple(a * b for a in self.words for b in other.words))

    def scaled(self, c) -> "OperatorExpr":
        return OperatorExpr(tuple(w.scaled(c) for w in self.words))


def op(*gens: Generator, scalar=None) -> OperatorExpr:
    w = Word(tuple(gens)) if scalar is None else Word(tuple(gens)).scaled(scalar)
    return OperatorExpr((w,))


def identity() -> OperatorExpr:
    return op()


def normal_order(word: Word) -> Tuple[Fraction, BiPoly]:
    """Rewrite a word in ``MulX``/``Y`` as ``x^A R(lam, y)``.

    Working right to left, ``y x^A R(y) = x^A (y + A lam) R(y)``.
    The word's scalar must be rational.
    """
    A = Fraction(0)
    R = BiPoly.const(1)
    for g in reversed(word.gens):
        if isinstance(g, MulX):
            A += g.a
        elif isinstance(g, Y):
            R = (BiPoly.y() + BiPoly.lam(A)) * R
        else:
            raise QuantumError("normal_order handles MulX and Y only")
    return A, R * _rational_scalar(word.scalar)


def _rational_scalar(c: ExpPoly) -> Fraction:
    if c.is_zero():
        return Fraction(0)
    items = list(c.items())
    if len(items) != 1 or items[0][0] != (0, LambdaPoly()):
        raise QuantumError(f"scalar {c} is not rational")
    return items[0][1]


def exp_of(expr: OperatorExpr) -> ExpDiag:
    """``exp(expr)`` for an expression that normal orders to a diagonal operator."""
    total = BiPoly()
    for w in expr.words:
        A, R = normal_order(w)
        if A != 0:
            raise QuantumError(f"exponent is not diagonal (net x-shift {A})")
        total = total + R
    return ExpDiag(total)


# -- series in x with ExpPoly coefficients ------------------------------------------

class XSeries:
    """``sum_e c_e x^e`` over half-integers ``e <= order``; coefficients are ExpPoly."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Dict[Fraction, ExpPoly], order: Rational):
        self.order = Fraction(order)
        out = {}
        for e, c in coeffs.items():
            e = Fraction(e)
            if (2 * e).denominator != 1:
                raise QuantumError(f"exponent {e} leaves the half-integer grid")
            if e <= self.order and not c.is_zero():
                out[e] = c
        self.coeffs: Dict[Fraction, ExpPoly] = out

    @classmethod
    def monomial(cls, e: Rational, order: Rational, c: Optional[ExpPoly] = None) -> "XSeries":
        return cls({Fraction(e): ExpPoly.one() if c is None else c}, order)

    def __getitem__(self, e: Rational) -> ExpPoly:
        return self.coeffs.get(Fraction(e), ExpPoly.zero())

    def exponents(self) -> List[Fraction]:
        return sorted(self.coeffs)

    def __add__(self, other: "XSeries") -> "XSeries":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return XSeries(out, min(self.order, other.order))

    def __sub__(self, other: "XSeries") -> "XSeries":
        return self + XSeries({e: -c for e, c in other.coeffs.items()}, other.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def replace(self, e: Rational, c: ExpPoly) -> "XSeries":
        out = dict(self.coeffs)
        out[Fraction(e)] = c
        return XSeries(out, self.order)

    def __repr__(self) -> str:
        return f"XSeries({len(self.coeffs)} terms, order={self.order})"


def _apply_gen(g: Generator, coeffs: Dict[Fraction, ExpPoly]) -> Dict[Fraction, ExpPoly]:
    if isinstance(g, MulX):
        return {e + g.a: c for e, c in coeffs.items()}
    if isinstance(g, Y):
        return {e: c.shift(k=1, c=e) for e, c in coeffs.items() if e != 0}
    if isinstance(g, ExpDiag):
        return {e: c.shift(P=g.R.at_exponent(e)) for e, c in coeffs.items()}
    raise TypeError(f"unknown generator {g!r}")


def apply(expr: OperatorExpr, f: XSeries) -> XSeries:
    """Apply an operator expression; results above ``f.order`` are dropped."""
    total: Dict[Fraction, ExpPoly] = {}
    for w in expr.words:
        coeffs = dict(f.coeffs)
        for g in reversed(w.gens):
            coeffs = _apply_gen(g, coeffs)
        for e, c in coeffs.items():
            if (2 * e).denominator != 1:
                raise QuantumError(f"exponent {e} leaves the half-integer grid")
            c = c * w.scalar
            total[e] = total[e] + c if e in total else c
    return XSeries(total, f.order)


# -- families ------------------------------------------------------------------------

FAMILIES = ("double", "spin", "mixed")


def default_family(r: int, q: int) -> str:
    if r == 1:
        return "double"
    if q == 1:
        return "spin"
    return "mixed"


def _check_family(r: int, q: int, family: Optional[str]) -> str:
    family = family or default_family(r, q)
    if family not in FAMILIES:
        raise QuantumError(f"unknown family {family!r}")
    if family == "double" and r != 1:
        raise QuantumError("the q-double family has r = 1")
    if family == "spin" and q != 1:
        raise QuantumError("the r-spin family has q = 1")
    return family


def telescoped_exponent(r: int, q: int, n: Rational) -> LambdaPoly:
    """``lam^r ((n + q)^(r+1) - n^(r+1)) / (r+1)`` for a shifted exponent ``n``."""
    n = Fraction(n)
    return LambdaPoly.monomial(r, ((n + q) ** (r + 1) - n ** (r + 1)) / (r + 1))


def z_principal(r: int, q: int, N: int) -> XSeries:
    """``sum_d x^(qd) / (lam^d q^d d!) exp(lam^r ((qd - 1/2)^(r+1) - (-1/2)^(r+1)) / (r+1))``."""
    if N < 0:
        raise QuantumError("N must be non-negative")
    coeffs = {}
    for d in range(N // q + 1):
        P = LambdaPoly.monomial(r, ((q * d - HALF) ** (r + 1) - (-HALF) ** (r + 1)) / (r + 1))
        coeffs[Fraction(q * d)] = ExpPoly.term(Fraction(1, factorial(d) * q**d), -d, P)
    return XSeries(coeffs, N)


def _spin_exponent(r: int, q: int) -> BiPoly:
    """``(q/(r+1)) sum_i (y + q lam)^i y^(r-i)``."""
    shifted = BiPoly.y() + BiPoly.lam(q)
    total = BiPoly()
    for i in range(r + 1):
        total = total + (shifted**i) * (BiPoly.y() ** (r - i))
    return total * Fraction(q, r + 1)


def quantum_operator(r: int, q: int, family: Optional[str] = None) -> OperatorExpr:
    """Annihilating operator in evaluated diagonal form.

    double: ``y - exp(q(q-1) lam/2) x^q exp(q y)``;
    spin/mixed: ``y - x^(q+1/2) exp(R) x^(-1/2)`` with ``R`` from :func:`_spin_exponent`.
    """
    family = _check_family(r, q, family)
    if family == "double":
        scalar = ExpPoly.term(1, 0, LambdaPoly.monomial(1, Fraction(q * (q - 1), 2)))
        return op(Y()) - op(MulX(q), ExpDiag(BiPoly.y(q)), scalar=scalar)
    return op(Y()) - op(MulX(q + HALF), ExpDiag(_spin_exponent(r, q)), MulX(-HALF))


def quantum_operator_raw(r: int, q: int, family: Optional[str] = None, mixed_power: str = "r-i") -> OperatorExpr:
    """Ordered form built from ``x``, ``y`` and exponentials of ``y``.

    double: ``y - (e^(c y) x e^(-c y))^q e^(q y)`` with ``c = (q-1)/2``.
    spin/mixed: ``y - x^(q+1/2) exp(q/(r+1) sum_i x^-q y^i x^q y^P) x^-1/2``
    where ``P`` is ``r-i`` (``mixed_power="r-i"``) or the constant ``r-1``
    (``mixed_power="r-1"``).
    """
    family = _check_family(r, q, family)
    if family == "double":
        c = Fraction(q - 1, 2)
        conj = op(ExpDiag(BiPoly.y(c)), MulX(1), ExpDiag(BiPoly.y(-c)))
        power = identity()
        for _ in range(q):
            power = power * conj
        return op(Y()) - power * op(ExpDiag(BiPoly.y(q)))
    inner_words = []
    for i in range(r + 1):
        tail = r - i if mixed_power == "r-i" else r - 1
        gens = (MulX(-q),) + (Y(),) * i + (MulX(q),) + (Y(),) * tail
        inner_words.append(Word(gens).scaled(Fraction(q, r + 1)))
    expo = exp_of(OperatorExpr(tuple(inner_words)))
    return op(Y()) - op(MulX(q + HALF), expo, MulX(-HALF))


# -- verifiers ------------------------------------------------------------------------

def verify_annihilation(
    r: int,
    q: int,
    N: int,
    raw: bool = False,
    family: Optional[str] = None,
    operator: Optional[OperatorExpr] = None,
    z: Optional[XSeries] = None,
) -> CheckResult:
    """Check that the operator kills ``z_principal`` at every exponent ``<= N - q``."""
    if N < 1:
        raise QuantumError("N must be >= 1")
    if operator is None:
        operator = (quantum_operator_raw if raw else quantum_operator)(r, q, family)
    z = z_principal(r, q, N) if z is None else z
    result = apply(operator, z)
    info = {"r": r, "q": q, "order": N, "form": "raw" if raw else "simplified"}
    for e in result.exponents():
        if e.denominator != 1:
            return CheckResult("annihilation", False, {"exponent": str(e), "reason": "non-integer exponent", "residual": result[e].to_json()}, info)
        if e <= N - q:
            return CheckResult("annihilation", False, {"exponent": str(e), "residual": result[e].to_json()}, info)
    return CheckResult("annihilation", True, info=info)


def operators_agree(a: OperatorExpr, b: OperatorExpr, exponents: Iterable[Rational], order: int = 10**6) -> CheckResult:
    """Compare two operators on single monomials ``x^n``."""
    for n in exponents:
        mono = XSeries.monomial(n, order)
        lhs, rhs = apply(a, mono), apply(b, mono)
        if lhs != rhs:
            diff = lhs - rhs
            e = diff.exponents()[0]
            return CheckResult("operators_agree", False, {"monomial": str(Fraction(n)), "exponent": str(e), "residual": diff[e].to_json()})
    return CheckResult("operators_agree", True)


def monomial_grid(n_max: int, half: bool = False) -> List[Fraction]:
    step = HALF if half else Fraction(1)
    out, n = [], Fraction(0)
    while n <= n_max:
        out.append(n)
        n += step
    return out


def recurrence_sides(r: int, q: int, d: int, family: Optional[str] = None, z: Optional[XSeries] = None) -> Tuple[XSeries, XSeries]:
    """Both sides of the two-term recurrence linking ``a_d`` and ``a_(d+1)``.

    double: ``lam q (d+1) a_(d+1) = (x e^(lam(q-1)/2))^q e^(lam d q^2) a_d``;
    spin:   ``(d+1) lam a_(d+1) = x exp(lam^r ((d+1/2)^(r+1) - (d-1/2)^(r+1))/(r+1)) a_d``;
    mixed:  ``lam q (d+1) a_(d+1) = x^q exp(lam^r ((qd+q-1/2)^(r+1) - (qd-1/2)^(r+1))/(r+1)) a_d``.
    """
    family = _check_family(r, q, family)
    big = q * (d + 1)
    z = z_principal(r, q, big) if z is None else z
    a_next, a_d = z[q * (d + 1)], z[q * d]
    if family == "double":
        lhs = a_next.shift(k=1, c=q * (d + 1))
        P = LambdaPoly.monomial(1, Fraction(q * (q - 1), 2)) + LambdaPoly.monomial(1, d * q * q)
    elif family == "spin":
        lhs = a_next.shift(k=1, c=d + 1)
        P = LambdaPoly.monomial(r, ((d + HALF) ** (r + 1) - (d - HALF) ** (r + 1)) / (r + 1))
    else:
        lhs = a_next.shift(k=1, c=q * (d + 1))
        P = telescoped_exponent(r, q, q * d - HALF)
    rhs = a_d.shift(P=P)
    return XSeries({Fraction(big): lhs}, big), XSeries({Fraction(big): rhs}, big)


def verify_recurrence(r: int, q: int, d_max: int, family: Optional[str] = None, z: Optional[XSeries] = None) -> CheckResult:
    if d_max < 0:
        raise QuantumError("d_max must be non-negative")
    z = z_principal(r, q, q * (d_max + 1)) if z is None else z
    if z[0] != ExpPoly.one():
        return CheckResult("recurrence", False, {"d": 0, "reason": "a_0 != 1"})
    for d in range(d_max + 1):
        lhs, rhs = recurrence_sides(r, q, d, family, z)
        if lhs != rhs:
            e = q * (d + 1)
            return CheckResult("recurrence", False, {"d": d, "residual": (lhs[e] - rhs[e]).to_json()}, {"r": r, "q": q})
    return CheckResult("recurrence", True, info={"r": r, "q": q, "d_max": d_max})


def telescoping_identity(r: int) -> bool:
    """``sum_i (n+1/2)^i (n-1/2)^(r-i) == (n+1/2)^(r+1) - (n-1/2)^(r+1)`` in ``Q[n]``."""
    n = LambdaPoly.monomial(1)
    plus, minus = n + HALF, n - HALF
    lhs = LambdaPoly()
    for i in range(r + 1):
        lhs = lhs + plus**i * minus ** (r - i)
    return lhs == plus ** (r + 1) - minus ** (r + 1)


def _scalar_limit(c: ExpPoly) -> Fraction:
    """``lam -> 0`` limit of a scalar prefactor."""
    total = Fraction(0)
    for (k, P), coeff in c.items():
        if k < 0:
            raise QuantumError("scalar has no lam -> 0 limit")
        if P.coeff(0) != 0:
            raise QuantumError("scalar has a transcendental constant exp factor")
        if k == 0:
            total += coeff
    return total


def operator_symbol(expr: OperatorExpr, y: TruncSeries) -> TruncSeries:
    """Commutative ``lam -> 0`` symbol of ``expr`` with ``y`` substituted.

    Each word becomes ``c x^A y^(#Y) exp(sum_j R_j(0, y))``.
    """
    N = y.order
    total = TruncSeries.zero(N)
    for w in expr.words:
        c = _scalar_limit(w.scalar)
        if c == 0:
            continue
        A = Fraction(0)
        ny = 0
        expo: Dict[int, Fraction] = {}
        for g in w.gens:
            if isinstance(g, MulX):
                A += g.a
            elif isinstance(g, Y):
                ny += 1
            else:
                for b, coeff in g.R.symbol().items():
                    expo[b] = expo.get(b, Fraction(0)) + coeff
        if A.denominator != 1 or A < 0:
            raise QuantumError(f"word has x-degree {A}")
        if expo.get(0, 0) != 0:
            raise QuantumError("exponent symbol has a constant term")
        arg = TruncSeries.zero(N)
        for b, coeff in expo.items():
            if coeff:
                arg = arg + (y**b).scale(coeff)
        term = (y**ny) * exp_series(arg)
        total = total + term.shift(int(A)).scale(c)
    return total


def semiclassical_check(r: int, q: int, N: int, raw: bool = False, family: Optional[str] = None, y: Optional[TruncSeries] = None) -> CheckResult:
    """The operator's symbol evaluated on the spectral ``y(x)`` vanishes to order N."""
    operator = (quantum_operator_raw if raw else quantum_operator)(r, q, family)
    y = y_series(SpectralFamily(r, q, N)) if y is None else y
    info = {"r": r, "q": q, "order": N, "form": "raw" if raw else "simplified"}
    if y[0] != 0:
        return CheckResult("semiclassical", False, {"coefficient": 0, "residual": str(y[0])}, info)
    residual = operator_symbol(operator, y)
    for i, c in enumerate(residual.coeffs):
        if c != 0:
            return CheckResult("semiclassical", False, {"coefficient": i, "residual": str(c)}, info)
    return CheckResult("semiclassical", True, info=info)
