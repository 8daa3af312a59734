"""Mixed r-spin q-double Hurwitz numbers.

``h^{r,q}_{g,mu}`` is the connected vacuum expectation

    < prod_i alpha_{mu_i}/mu_i * (r! [w^(r+1)] E~_0(w))^m * alpha_{-q}^s/(q^s s!) >°

with ``s = |mu|/q`` and ``m r = 2g - 2 + l(mu) + s``.  ``r = 1`` gives the
q-double numbers, ``q = 1`` the r-spin numbers.

Three independent routes are provided:

* the character formula (diagonalise the completed cycle on Schur vectors),
* direct evaluation in the Fock model of :mod:`hurwitzq.fock`,
* the logarithm of the multivariate partition function.

The first two produce disconnected values and share the cumulant inversion
in :func:`connected_from_disconnected`; the third never sees set partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Callable, Dict, Iterator, Optional, Tuple

from . import fock
from .partitions import (
    Partition,
    automorphism_factor,
    character,
    character_column,
    completed_cycle_weight,
    format_partition,
    make_partition,
    partitions_of,
    z_factor,
)
from .report import CheckResult
from .series import MultiSeries, multiseries_log


class HurwitzParamError(ValueError):
    """Raised when (r, q, g, mu) violates a divisibility constraint."""


@dataclass(frozen=True)
class HurwitzParams:
    r: int
    q: int
    g: int
    mu: Partition

    def __post_init__(self):
        object.__setattr__(self, "mu", make_partition(self.mu))
        if self.r < 1 or self.q < 1:
            raise HurwitzParamError("r and q must be positive")
        if self.g < 0:
            raise HurwitzParamError("genus must be non-negative")
        if not self.mu:
            raise HurwitzParamError("mu must be non-empty")
        if self.degree % self.q:
            raise HurwitzParamError(f"q divides |mu| violated: q={self.q}, |mu|={self.degree}")
        if self._rh_numerator % self.r:
            raise HurwitzParamError(
                f"Riemann-Hurwitz integrality violated: r={self.r} does not divide "
                f"2g-2+l(mu)+s={self._rh_numerator}"
            )
        if self._rh_numerator < 0:
            raise HurwitzParamError("Riemann-Hurwitz gives m < 0")

    @property
    def degree(self) -> int:
        return sum(self.mu)

    @property
    def s(self) -> int:
        return self.degree // self.q

    @property
    def ell(self) -> int:
        return len(self.mu)

    @property
    def _rh_numerator(self) -> int:
        return 2 * self.g - 2 + self.ell + self.degree // self.q

    @property
    def m(self) -> int:
        return self._rh_numerator // self.r


@dataclass(frozen=True)
class HurwitzValue:
    params: HurwitzParams
    value: Fraction

    def to_record(self) -> Dict[str, object]:
        p = self.params
        return {
            "r": p.r,
            "q": p.q,
            "g": p.g,
            "mu": format_partition(p.mu),
            "m": p.m,
            "value": str(self.value),
        }


def rh_genus(m: int, mu: Partition, r: int, q: int) -> Optional[int]:
    """Genus with ``m`` branch points, or ``None`` if no integer genus >= 0 fits."""
    twice = m * r + 2 - len(mu) - sum(mu) // q
    if twice < 0 or twice % 2:
        return None
    return twice // 2


# -- disconnected values ------------------------------------------------------

@lru_cache(maxsize=None)
def disconnected_vev(m: int, mu: Partition, r: int, q: int) -> Fraction:
    """Disconnected expectation via the character formula.

    ``sum_lam chi^lam_mu / prod(mu) * F(lam)^m * chi^lam_{(q^s)} / (q^s s!)``
    with ``F(lam) = p_{r+1}(lam)/(r+1)``.
    """
    mu = make_partition(mu)
    d = sum(mu)
    if d % q:
        return Fraction(0)
    s = d // q
    qs = (q,) * s
    total = Fraction(0)
    for lam, chi_mu in character_column(mu).items():
        chi_q = character(lam, qs)
        if chi_q:
            total += chi_mu * chi_q * completed_cycle_weight(lam, r) ** m
    return total / (prod(mu) * q**s * factorial(s))


@lru_cache(maxsize=None)
def disconnected_vev_fock(m: int, mu: Partition, r: int, q: int) -> Fraction:
    """Same quantity evaluated by acting with operators on the vacuum."""
    mu = make_partition(mu)
    d = sum(mu)
    if d % q:
        return Fraction(0)
    s = d // q
    v = fock.vacuum()
    for _ in range(s):
        v = fock.alpha(-q, v)
    for _ in range(m):
        v = fock.completed_cycle(r, v)
    for part in mu:
        v = fock.alpha(part, v)
    return Fraction(fock.vev(v)) / (prod(mu) * q**s * factorial(s))


# -- connected values -----------------------------------------------------------

DisconnectedFn = Callable[[int, Partition, int, int], Fraction]


def connected_from_disconnected(m: int, mu: Partition, r: int, q: int, dvev: DisconnectedFn = disconnected_vev) -> Fraction:
    """Cumulant inversion over set partitions of the parts of ``mu``.

    Fixing the block ``B`` that holds the first part,
    ``D(m, S) = sum_B sum_{m_B} C(m, m_B) C(m_B, B) D(m - m_B, S minus B)``,
    so ``C(m, S)`` is ``D(m, S)`` minus the terms with ``B`` a proper subset.
    Blocks whose size is not divisible by ``q`` contribute nothing.
    """
    cache: Dict[Tuple[int, Partition], Fraction] = {}

    def D(mm: int, parts: Tuple[int, ...]) -> Fraction:
        if not parts:
            return Fraction(1 if mm == 0 else 0)
        return dvev(mm, make_partition(parts), r, q)

    def C(mm: int, parts: Tuple[int, ...]) -> Fraction:
        key = (mm, make_partition(parts))
        if key in cache:
            return cache[key]
        if sum(parts) % q:
            cache[key] = Fraction(0)
            return cache[key]
        first, rest = parts[0], parts[1:]
        total = D(mm, parts)
        n_rest = len(rest)
        for size in range(n_rest):  # size == n_rest would be the whole set
            for idx in combinations(range(n_rest), size):
                block = (first,) + tuple(rest[i] for i in idx)
                if sum(block) % q:
                    continue
                chosen = set(idx)
                remainder = tuple(rest[i] for i in range(n_rest) if i not in chosen)
                if sum(remainder) % q:
                    continue
                for mb in range(mm + 1):
                    cb = C(mb, block)
                    if cb:
                        total -= comb(mm, mb) * cb * D(mm - mb, remainder)
        cache[key] = total
        return total

    return C(m, make_partition(mu))


@lru_cache(maxsize=None)
def _connected_cached(m: int, mu: Partition, r: int, q: int, method: str) -> Fraction:
    dvev = {"character": disconnected_vev, "fock": disconnected_vev_fock}[method]
    return connected_from_disconnected(m, mu, r, q, dvev)


def connected_value(m: int, mu: Partition, r: int, q: int, method: str = "character") -> Fraction:
    """Connected expectation for an explicit branch-point count ``m``."""
    return _connected_cached(m, make_partition(mu), r, q, method)


def connected_hurwitz(params: HurwitzParams, method: str = "character") -> HurwitzValue:
    return HurwitzValue(params, connected_value(params.m, params.mu, params.r, params.q, method))


def hurwitz_number(r: int, q: int, g: int, mu, method: str = "character") -> Fraction:
    return connected_hurwitz(HurwitzParams(r, q, g, tuple(mu)), method).value


# -- log Z oracle -----------------------------------------------------------------

def log_z_oracle(D: int, M: int, r: int, q: int) -> MultiSeries:
    """``log Z`` with ``Z = sum_lam s_lam(p) exp(t F(lam)) chi^lam_{(q^s)}/(q^s s!)``.

    ``s_lam(p) = sum_mu chi^lam_mu p_mu / z_mu``.  Truncated at p-weight ``D``
    and t-degree ``M``.
    """
    terms: Dict[Tuple[Tuple[int, ...], int], Fraction] = {}
    for d in range(0, D + 1, q):
        s = d // q
        norm = Fraction(1, q**s * factorial(s))
        mus = partitions_of(d)
        for lam in mus:
            chi_q = character(lam, (q,) * s)
            if not chi_q:
                continue
            F = completed_cycle_weight(lam, r)
            weight = norm * chi_q
            for mu in mus:
                chi = character(lam, mu)
                if not chi:
                    continue
                base = weight * chi / z_factor(mu)
                Fj = Fraction(1)
                for j in range(M + 1):
                    key = (mu, j)
                    terms[key] = terms.get(key, Fraction(0)) + base * Fj / factorial(j)
                    Fj *= F
    return multiseries_log(MultiSeries(terms, D, M))


def log_z_connected(D: int, M: int, r: int, q: int) -> Dict[Tuple[Partition, int], Fraction]:
    """Connected numbers read off :func:`log_z_oracle`.

    The coefficient of ``p_mu t^m`` is ``C(m, mu) / (m! prod_i m_i(mu)!)``;
    the multiplicity factor comes from expanding ``exp(sum alpha_i p_i / i)``.
    """
    log_z = log_z_oracle(D, M, r, q)
    out = {}
    for (parts, j), c in log_z.terms.items():
        if parts:
            out[(parts, j)] = c * factorial(j) * automorphism_factor(parts)
    return out


# -- genus zero, one part ---------------------------------------------------------

FAMILIES = ("double", "spin", "mixed")


def _default_family(r: int, q: int) -> str:
    return "double" if r == 1 else "mixed"


def f01_part(n: int, r: int, q: int, family: Optional[str] = None) -> int:
    """Part size ``d`` whose ``p_d`` coefficient :func:`f01_coefficient` gives."""
    family = family or _default_family(r, q)
    if family == "double":
        return n * q
    return (n * r + 1) * q


def f01_coefficient(n: int, r: int, q: int, family: Optional[str] = None) -> Fraction:
    """Closed-form coefficient of ``p_d`` in ``F_{0,1}``.

    ``double`` (r = 1): ``(nq)^(n-2)/n!`` for ``p_{nq}``, n >= 1.
    ``spin`` (q = 1): ``(rn+1)^(n-2)/n!`` for ``p_{rn+1}``, n >= 0.
    ``mixed``: ``q((nr+1)q)^(n-2)/n!`` for ``p_{(nr+1)q}``, n >= 0.
    The default is ``double`` when r = 1 and ``mixed`` otherwise.
    """
    family = family or _default_family(r, q)
    if family == "double":
        if r != 1:
            raise ValueError("the double family has r = 1")
        if n < 1:
            raise ValueError("double family needs n >= 1")
        return Fraction(n * q) ** (n - 2) / factorial(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    if family == "spin":
        if q != 1:
            raise ValueError("the spin family has q = 1")
        return Fraction(r * n + 1) ** (n - 2) / factorial(n)
    if family == "mixed":
        return q * Fraction((n * r + 1) * q) ** (n - 2) / factorial(n)
    raise ValueError(f"unknown family {family!r}")


def genus0_one_part(d: int, r: int, q: int, method: str = "character") -> Fraction:
    """``h_{0,(d)} / m!`` from the connected expectation."""
    params = HurwitzParams(r, q, 0, (d,))
    return connected_hurwitz(params, method).value / factorial(params.m)


# -- tables -------------------------------------------------------------------------

def valid_params(r: int, q: int, max_degree: int, max_genus: int) -> Iterator[HurwitzParams]:
    """All valid (g, mu) with |mu| <= max_degree, sorted by (|mu|, g, mu order)."""
    for d in range(q, max_degree + 1, q):
        for g in range(max_genus + 1):
            for mu in partitions_of(d):
                try:
                    yield HurwitzParams(r, q, g, mu)
                except HurwitzParamError:
                    continue


def triple_path_agreement(r: int, q: int, max_degree: int, max_m: int) -> CheckResult:
    """Character formula, Fock evaluation and log Z agree on every connected
    value with ``|mu| <= max_degree`` and Riemann-Hurwitz-valid ``m <= max_m``."""
    from_log = log_z_connected(max_degree, max_m, r, q)
    compared = 0
    for d in range(q, max_degree + 1, q):
        for mu in partitions_of(d):
            for m in range(max_m + 1):
                if rh_genus(m, mu, r, q) is None:
                    continue
                via_chars = connected_value(m, mu, r, q, "character")
                via_fock = connected_value(m, mu, r, q, "fock")
                via_log = from_log.get((mu, m), Fraction(0))
                compared += 1
                if not via_chars == via_fock == via_log:
                    return CheckResult(
                        "oracle",
                        False,
                        {
                            "mu": format_partition(mu),
                            "m": m,
                            "character": str(via_chars),
                            "fock": str(via_fock),
                            "log_z": str(via_log),
                        },
                        {"r": r, "q": q},
                    )
    return CheckResult("oracle", True, info={"r": r, "q": q, "compared": compared})
