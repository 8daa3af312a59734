"""Truncated formal power series.

``TruncSeries`` works over any coefficient ring described by a
:class:`~hurwitzq.rings.Ring` (rationals or ``ExpPoly``).  ``MultiSeries``
is a sparse multivariate series in power sums ``p_1, p_2, ...`` (``p_i`` of
weight ``i``) and one extra variable ``t`` of weight zero.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Sequence, Tuple, Union

from .rings import QQ, Rational, Ring


class SeriesError(ValueError):
    pass


class TruncSeries:
    """Power series ``c_0 + c_1 z + ... + c_N z^N`` modulo ``z^(N+1)``."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable, order: int, ring: Ring = QQ):
        if order < 0:
            raise SeriesError("order must be non-negative")
        cs = [ring.from_rational(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        cs = cs[: order + 1]
        cs.extend(ring.zero for _ in range(order + 1 - len(cs)))
        self.coeffs: Tuple = tuple(cs)
        self.ring = ring

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int, ring: Ring = QQ) -> "TruncSeries":
        return cls([], order, ring)

    @classmethod
    def one(cls, order: int, ring: Ring = QQ) -> "TruncSeries":
        return cls([ring.one], order, ring)

    @classmethod
    def variable(cls, order: int, ring: Ring = QQ) -> "TruncSeries":
        return cls([ring.zero, ring.one], order, ring)

    @classmethod
    def monomial(cls, k: int, order: int, c=None, ring: Ring = QQ) -> "TruncSeries":
        c = ring.one if c is None else c
        return cls([ring.zero] * k + [c], order, ring)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "TruncSeries") -> None:
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")
        if other.ring is not self.ring:
            raise SeriesError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _new(self, coeffs) -> "TruncSeries":
        return TruncSeries(coeffs, self.order, self.ring)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return self._new(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return self._new(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "TruncSeries":
        return self._new(-a for a in self.coeffs)

    def scale(self, c) -> "TruncSeries":
        return self._new(a * c for a in self.coeffs)

    def __mul__(self, other: Union["TruncSeries", Rational]) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check(other)
        N = self.order
        zero = self.ring.zero
        a, b = self.coeffs, other.coeffs
        nz_a = [(i, x) for i, x in enumerate(a) if not self.ring.is_zero(x)]
        nz_b = [(j, y) for j, y in enumerate(b) if not self.ring.is_zero(y)]
        out = [zero] * (N + 1)
        for i, x in nz_a:
            for j, y in nz_b:
                if i + j > N:
                    break
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.reciprocal() ** (-n)
        result = TruncSeries.one(self.order, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"TruncSeries({list(self.coeffs)!r}, order={self.order})"

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return i
        return self.order + 1

    def first_difference(self, other: "TruncSeries"):
        """Index of the first differing coefficient, or ``None``."""
        self._check(other)
        for i, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if not self.ring.is_zero(a - b):
                return i
        return None

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``z^k`` (``k`` may be negative if the low terms vanish)."""
        if k >= 0:
            return self._new([self.ring.zero] * k + list(self.coeffs))
        if self.valuation() < -k:
            raise SeriesError("negative shift would produce negative exponents")
        return self._new(self.coeffs[-k:])

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, order, self.ring)

    def derivative_euler(self) -> "TruncSeries":
        """``z d/dz``."""
        return self._new(c * n for n, c in enumerate(self.coeffs))

    def substitute_power(self, k: int, c=None) -> "TruncSeries":
        """``f(c z^k)`` for ``k >= 1``, without general composition."""
        c = self.ring.one if c is None else c
        out = [self.ring.zero] * (self.order + 1)
        power = self.ring.one
        for n, a in enumerate(self.coeffs):
            if n * k > self.order:
                break
            out[n * k] = a * power
            power = power * c
        return self._new(out)

    def reciprocal(self) -> "TruncSeries":
        a = self.coeffs
        if self.ring.is_zero(a[0]):
            raise SeriesError("reciprocal needs a nonzero constant term")
        inv0 = self.ring.inverse(a[0])
        b = [inv0]
        for n in range(1, self.order + 1):
            s = self.ring.zero
            for k in range(1, n + 1):
                s = s + a[k] * b[n - k]
            b.append(-(s * inv0))
        return self._new(b)

    def __truediv__(self, other: Union["TruncSeries", Rational]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return self * other.reciprocal()
        return self.scale(Fraction(1, 1) / Fraction(other))


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def scale(a: TruncSeries, c) -> TruncSeries:
    return a.scale(c)


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """``outer(inner(z))`` truncated at the common order (Horner scheme)."""
    outer._check(inner)
    if not inner.ring.is_zero(inner.coeffs[0]):
        raise SeriesError("inner series must have zero constant term")
    N = outer.order
    result = TruncSeries([outer.coeffs[N]], N, outer.ring)
    for i in range(N - 1, -1, -1):
        result = result * inner
        result = result + TruncSeries([outer.coeffs[i]], N, outer.ring)
    return result


def exp_series(f: TruncSeries) -> TruncSeries:
    """``exp(f)`` for ``f`` with zero constant term.

    Uses ``g' = f' g``, i.e. ``n g_n = sum_k k f_k g_{n-k}``.
    """
    ring = f.ring
    if not ring.is_zero(f.coeffs[0]):
        raise SeriesError("exp_series needs a zero constant term")
    a = f.coeffs
    g = [ring.one]
    for n in range(1, f.order + 1):
        s = ring.zero
        for k in range(1, n + 1):
            if not ring.is_zero(a[k]):
                s = s + a[k] * g[n - k] * k
        g.append(s * Fraction(1, n))
    return TruncSeries(g, f.order, ring)


def log_series(g: TruncSeries) -> TruncSeries:
    """``log(g)`` for ``g`` with constant term 1."""
    ring = g.ring
    if g.coeffs[0] != ring.one:
        raise SeriesError("log_series needs constant term 1")
    b = g.coeffs
    f = [ring.zero]
    for n in range(1, g.order + 1):
        s = b[n] * n
        for k in range(1, n):
            if not ring.is_zero(f[k]):
                s = s - f[k] * b[n - k] * k
        f.append(s * Fraction(1, n))
    return TruncSeries(f, g.order, ring)


def lambert_w(N: int) -> TruncSeries:
    """Principal-branch Lambert W: coefficient of ``z^n`` is ``(-1)^(n+1) n^(n-1)/n!``."""
    if N < 1:
        raise SeriesError("lambert_w needs N >= 1")
    coeffs = [Fraction(0)]
    for n in range(1, N + 1):
        coeffs.append(Fraction((-1) ** (n + 1) * n ** (n - 1), factorial(n)))
    return TruncSeries(coeffs, N)


def _rat_pow(base: Fraction, e: int) -> Fraction:
    return base**e


def w_power_ratio(alpha: Rational, N: int) -> TruncSeries:
    """``(W(x)/x)^alpha``: coefficient of ``x^n`` is ``alpha (n+alpha)^(n-1) (-1)^n / n!``."""
    alpha = Fraction(alpha)
    if alpha == 0:
        raise SeriesError("alpha must be nonzero")
    if N < 0:
        raise SeriesError("N must be non-negative")
    coeffs = []
    for n in range(N + 1):
        coeffs.append(alpha * _rat_pow(n + alpha, n - 1) * (-1) ** n / factorial(n))
    return TruncSeries(coeffs, N)


# -- multivariate series in power sums ---------------------------------------

Monomial = Tuple[Tuple[int, ...], int]


class MultiSeries:
    """Sparse series in ``p_1, p_2, ...`` and ``t``.

    A monomial is ``(parts, j)`` standing for ``p_parts[0] * p_parts[1] * ... * t^j``
    with ``parts`` weakly decreasing.  Monomials of p-weight above ``D`` or
    t-degree above ``M`` are discarded.
    """

    __slots__ = ("D", "M", "terms")

    def __init__(self, terms: Dict[Monomial, Fraction], D: int, M: int):
        self.D = D
        self.M = M
        self.terms: Dict[Monomial, Fraction] = {
            (tuple(parts), j): Fraction(c)
            for (parts, j), c in terms.items()
            if c != 0 and sum(parts) <= D and j <= M
        }

    @classmethod
    def one(cls, D: int, M: int) -> "MultiSeries":
        return cls({((), 0): Fraction(1)}, D, M)

    def constant_term(self) -> Fraction:
        return self.terms.get(((), 0), Fraction(0))

    def coefficient(self, parts: Sequence[int], j: int) -> Fraction:
        return self.terms.get((tuple(sorted(parts, reverse=True)), j), Fraction(0))

    def _check(self, other: "MultiSeries") -> None:
        if (self.D, self.M) != (other.D, other.M):
            raise SeriesError("MultiSeries bounds mismatch")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return MultiSeries(out, self.D, self.M)

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + other.scale(-1)

    def scale(self, c: Rational) -> "MultiSeries":
        return MultiSeries({k: v * c for k, v in self.terms.items()}, self.D, self.M)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check(other)
        out: Dict[Monomial, Fraction] = {}
        for (pa, ja), ca in self.terms.items():
            wa = sum(pa)
            for (pb, jb), cb in other.terms.items():
                if wa + sum(pb) > self.D or ja + jb > self.M:
                    continue
                key = (tuple(sorted(pa + pb, reverse=True)), ja + jb)
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return MultiSeries(out, self.D, self.M)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.D, self.M) == (other.D, other.M) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiSeries({len(self.terms)} terms, D={self.D}, M={self.M})"


def multiseries_log(Z: MultiSeries) -> MultiSeries:
    """``log Z = sum_k (-1)^(k+1) X^k / k`` with ``X = Z - 1``."""
    if Z.constant_term() != 1:
        raise SeriesError("multiseries_log needs constant term 1")
    X = Z - MultiSeries.one(Z.D, Z.M)
    result = MultiSeries({}, Z.D, Z.M)
    power = X
    k = 1
    while power.terms:
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
        power = power * X
        k += 1
    return result


def multiseries_exp(X: MultiSeries) -> MultiSeries:
    """``exp X`` for ``X`` with zero constant term."""
    if X.constant_term() != 0:
        raise SeriesError("multiseries_exp needs zero constant term")
    result = MultiSeries.one(X.D, X.M)
    power = MultiSeries.one(X.D, X.M)
    k = 1
    while True:
        power = (power * X).scale(Fraction(1, k))
        if not power.terms:
            return result
        result = result + power
        k += 1
