"""Finite-defect model of the charged semi-infinite wedge space.

A basis wedge is stored by its defects against the charge-0 vacuum
``-1/2 ^ -3/2 ^ ...``: the occupied slots above zero and the vacant slots
below zero.  Internally a half-integer slot ``k`` is the integer
``m = k - 1/2``, so the vacuum fills every ``m <= -1``.  Every operator here
acts exactly; on a fixed basis wedge the sums over ``k`` have finite support.

Vectors are plain dicts ``{MayaState: coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .partitions import Partition, partitions_of, shifted_power_sum
from .report import CheckResult
from .series import TruncSeries

__all__ = [
    "MayaState",
    "VACUUM",
    "vacuum",
    "basis_vector",
    "state_from_partition",
    "psi",
    "psi_star",
    "alpha",
    "e_tilde",
    "e_tilde_coeff",
    "completed_cycle",
    "shifted_power_sum",
    "vev",
    "zeta_series",
    "verify_commutator",
    "verify_e0_vacuum",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MayaState:
    particles: FrozenSet[int] = frozenset()  # occupied m >= 0
    holes: FrozenSet[int] = frozenset()  # vacant m <= -1

    @property
    def charge(self) -> int:
        return len(self.particles) - len(self.holes)

    @property
    def energy(self) -> Fraction:
        return sum((m + HALF for m in self.particles), Fraction(0)) - sum(
            (m + HALF for m in self.holes), Fraction(0)
        )

    def occupied(self, m: int) -> bool:
        return m in self.particles if m >= 0 else m not in self.holes

    def count_above(self, m: int) -> int:
        """Number of occupied slots strictly above ``m``."""
        if m >= 0:
            return sum(1 for p in self.particles if p > m)
        below_zero = -1 - m  # slots m+1 .. -1
        return len(self.particles) + below_zero - sum(1 for h in self.holes if h > m)

    def _remove(self, m: int) -> "MayaState":
        if m >= 0:
            return MayaState(self.particles - {m}, self.holes)
        return MayaState(self.particles, self.holes | {m})

    def _insert(self, m: int) -> "MayaState":
        if m >= 0:
            return MayaState(self.particles | {m}, self.holes)
        return MayaState(self.particles, self.holes - {m})

    def slots(self, depth: int = 0) -> List[Fraction]:
        """Occupied half-integers in decreasing order, down to the point where
        the vacuum pattern of this charge resumes (plus ``depth`` extra)."""
        c = self.charge
        floor = min([c - 1] + [h for h in self.holes] + [p for p in self.particles]) - depth
        ms = [m for m in range(max([0] + [p + 1 for p in self.particles]), floor - 1, -1) if self.occupied(m)]
        return [m + HALF for m in ms]

    def partition(self) -> Partition:
        """The partition of a charge-0 state (``slot_i = lam_i - i + 1/2``)."""
        if self.charge != 0:
            raise ValueError("only charge-0 states correspond to partitions")
        slots = self.slots()
        lam = [int(s + i - HALF) for i, s in enumerate(slots, start=1)]
        return tuple(p for p in lam if p > 0)


VACUUM = MayaState()

FockVector = Dict[MayaState, object]


def vacuum() -> FockVector:
    return {VACUUM: Fraction(1)}


def _to_m(k) -> int:
    k = Fraction(k)
    if k.denominator != 2:
        raise ValueError(f"{k} is not a half-integer")
    return int(k - HALF)


def state_from_partition(lam: Partition) -> MayaState:
    occupied = {lam[i] - (i + 1) for i in range(len(lam))}  # m = lam_i - i
    L = len(lam)
    particles = frozenset(m for m in occupied if m >= 0)
    holes = frozenset(m for m in range(-L, 0) if m not in occupied)
    return MayaState(particles, holes)


def basis_vector(lam: Partition) -> FockVector:
    return {state_from_partition(lam): Fraction(1)}


def _accumulate(out: dict, state: MayaState, c) -> None:
    if state in out:
        out[state] = out[state] + c
    else:
        out[state] = c


def _prune(v: dict) -> dict:
    return {s: c for s, c in v.items() if not _is_zero(c)}


def _is_zero(c) -> bool:
    if isinstance(c, np.ndarray):
        return not np.any(c != 0)
    if isinstance(c, TruncSeries):
        return all(x == 0 for x in c.coeffs)
    return c == 0


def psi(k, v: FockVector) -> FockVector:
    """Wedge ``k`` in front, then sort: sign ``(-1)^(# occupied slots above k)``."""
    m = _to_m(k)
    out: dict = {}
    for s, c in v.items():
        if s.occupied(m):
            continue
        sign = -1 if s.count_above(m) % 2 else 1
        _accumulate(out, s._insert(m), c * sign)
    return _prune(out)


def psi_star(k, v: FockVector) -> FockVector:
    """Adjoint of :func:`psi`: remove slot ``k`` with the same sign rule."""
    m = _to_m(k)
    out: dict = {}
    for s, c in v.items():
        if not s.occupied(m):
            continue
        sign = -1 if s.count_above(m) % 2 else 1
        _accumulate(out, s._remove(m), c * sign)
    return _prune(out)


def _bilinear_terms(s: MayaState, n: int) -> Iterator[Tuple[MayaState, int, Fraction]]:
    """Nonzero terms of ``:Psi_{k-n} Psi*_k:`` on ``s``: ``(state, sign, k)``."""
    lo = min([-1] + list(s.holes)) - abs(n) - 1
    hi = max([0] + list(s.particles)) + abs(n) + 1
    for m in range(lo, hi + 1):
        k = m + HALF
        if n == 0:
            # occupied k > 0 counts +1, vacant k < 0 counts -1
            if m >= 0 and m in s.particles:
                yield s, 1, k
            elif m < 0 and m in s.holes:
                yield s, -1, k
            continue
        if not s.occupied(m):
            continue
        t = m - n
        s1 = s._remove(m)
        if s1.occupied(t):
            continue
        sign = (-1) ** (s.count_above(m) + s1.count_above(t))
        yield s1._insert(t), sign, k


def _apply_weighted(n: int, v: FockVector, weight: Callable[[Fraction], object]) -> FockVector:
    """``sum_k weight(k) :Psi_{k-n} Psi*_k:`` applied to ``v``."""
    out: dict = {}
    for s, c in v.items():
        for s2, sign, k in _bilinear_terms(s, n):
            w = weight(k)
            _accumulate(out, s2, (w * c) * sign if sign == 1 else -(w * c))
    return _prune(out)


def alpha(n: int, v: FockVector) -> FockVector:
    if n == 0:
        raise ValueError("alpha_n needs n != 0")
    return _apply_weighted(n, v, lambda k: 1)


def e_tilde_coeff(n: int, j: int, v: FockVector) -> FockVector:
    """The ``z^j`` coefficient of ``E~_n(z)``: ``sum_k (k - n/2)^j / j! :Psi_{k-n} Psi*_k:``."""
    shift = Fraction(n, 2)
    fj = factorial(j)
    return _apply_weighted(n, v, lambda k: (k - shift) ** j / fj)


def _exp_row(c: Fraction, order: int) -> List[Fraction]:
    row, term = [], Fraction(1)
    for j in range(order + 1):
        row.append(term)
        term = term * c / (j + 1)
    return row


def e_tilde(n: int, v: FockVector, z_order: int) -> Dict[MayaState, TruncSeries]:
    """``E~_n(z) v`` with coefficients truncated in ``z`` at ``z_order``."""
    if z_order < 0:
        raise ValueError("z_order must be non-negative")
    shift = Fraction(n, 2)
    out: dict = {}
    for s, c in v.items():
        for s2, sign, k in _bilinear_terms(s, n):
            series = TruncSeries(_exp_row(k - shift, z_order), z_order).scale(c * sign)
            if s2 in out:
                out[s2] = out[s2] + series
            else:
                out[s2] = series
    return _prune(out)


def completed_cycle(r: int, v: FockVector) -> FockVector:
    """``r! [w^(r+1)] E~_0(w)`` applied to ``v``."""
    return {s: c * factorial(r) for s, c in e_tilde_coeff(0, r + 1, v).items()}


def vev(v: FockVector):
    """Coefficient of the vacuum, i.e. ``<0| v``."""
    return v.get(VACUUM, 0)


def inner(u: FockVector, v: FockVector):
    total = 0
    for s, c in u.items():
        if s in v:
            total = total + c * v[s]
    return total


def add(u: FockVector, v: FockVector) -> FockVector:
    out = dict(u)
    for s, c in v.items():
        _accumulate(out, s, c)
    return _prune(out)


def scale(v: FockVector, c) -> FockVector:
    return _prune({s: x * c for s, x in v.items()})


def states_up_to(energy: int) -> List[MayaState]:
    return [state_from_partition(lam) for n in range(energy + 1) for lam in partitions_of(n)]


# -- commutation relations -----------------------------------------------------

def zeta_series(order: int, scale_by: Fraction = Fraction(1)) -> TruncSeries:
    """``zeta(c z) = e^(c z/2) - e^(-c z/2)`` truncated at ``z^order``."""
    c = Fraction(scale_by)
    plus = _exp_row(c / 2, order)
    minus = _exp_row(-c / 2, order)
    return TruncSeries([a - b for a, b in zip(plus, minus)], order)


def _zeta_ratio(k: int, order: int) -> TruncSeries:
    """``zeta(k u) / zeta(u)`` as a power series in ``u``."""
    num = zeta_series(order + 1, k).shift(-1).truncate(order)
    den = zeta_series(order + 1).shift(-1).truncate(order)
    return num / den


def _grid(order: int) -> np.ndarray:
    g = np.empty((order + 1, order + 1), dtype=object)
    g.fill(Fraction(0))
    return g


def _outer(wrow: Sequence[Fraction], zrow: Sequence[Fraction]) -> np.ndarray:
    return np.outer(np.array(wrow, dtype=object), np.array(zrow, dtype=object))


def _apply_two(first: Tuple[int, str], second: Tuple[int, str], s: MayaState, order: int) -> Dict[MayaState, np.ndarray]:
    """``E~_a(x) E~_b(y)`` on ``s`` as grids indexed ``[w-degree, z-degree]``.

    ``first``/``second`` are ``(n, variable)`` with variable ``"w"`` or ``"z"``;
    ``second`` acts first.
    """
    n1, var1 = first
    n2, var2 = second
    out: dict = {}
    for s1, sign1, k1 in _bilinear_terms(s, n2):
        row2 = _exp_row(k1 - Fraction(n2, 2), order)
        for s2, sign2, k2 in _bilinear_terms(s1, n1):
            row1 = _exp_row(k2 - Fraction(n1, 2), order)
            wrow, zrow = (row1, row2) if var1 == "w" else (row2, row1)
            _accumulate(out, s2, _outer(wrow, zrow) * (sign1 * sign2))
    return out


def commutator_sides(k: int, l: int, s: MayaState, order: int) -> Tuple[Dict[MayaState, np.ndarray], Dict[MayaState, np.ndarray]]:
    """Both sides of ``[E~_k(w), E~_l(z)] = zeta(kz - lw) E_{k+l}(z+w)`` on ``s``."""
    lhs: dict = {}
    for st, g in _apply_two((k, "w"), (l, "z"), s, order).items():
        _accumulate(lhs, st, g)
    for st, g in _apply_two((l, "z"), (k, "w"), s, order).items():
        _accumulate(lhs, st, -g)

    n = k + l
    half_n = Fraction(n, 2)
    rhs: dict = {}
    for st, sign, i in _bilinear_terms(s, n):
        c = i - half_n
        g = _outer(_exp_row(c - Fraction(l, 2), order), _exp_row(c + Fraction(k, 2), order))
        g = g - _outer(_exp_row(c + Fraction(l, 2), order), _exp_row(c - Fraction(k, 2), order))
        _accumulate(rhs, st, g * sign)
    if n == 0 and k != 0:
        # scalar part of E_0: zeta(k(z+w)) / zeta(z+w), a series in u = z + w
        f = _zeta_ratio(k, 2 * order)
        g = _grid(order)
        for a in range(order + 1):
            for b in range(order + 1):
                g[a, b] = f[a + b] * comb(a + b, a)
        _accumulate(rhs, s, g)
    return _prune(lhs), _prune(rhs)


def verify_commutator(k: int, l: int, z_order: int, test_states: Iterable[MayaState]) -> CheckResult:
    """Check the E-operator commutation relation on each state, coefficientwise
    in ``w^a z^b`` for ``a, b <= z_order``."""
    for s in test_states:
        lhs, rhs = commutator_sides(k, l, s, z_order)
        for st in set(lhs) | set(rhs):
            diff = lhs.get(st, _grid(z_order)) - rhs.get(st, _grid(z_order))
            bad = np.argwhere(diff != 0)
            if len(bad):
                a, b = (int(x) for x in bad[0])
                return CheckResult(
                    "commutator",
                    False,
                    {
                        "k": k,
                        "l": l,
                        "state": _describe(s),
                        "component": _describe(st),
                        "w_degree": a,
                        "z_degree": b,
                        "residual": str(diff[a, b]),
                    },
                )
    return CheckResult("commutator", True, info={"k": k, "l": l})


def _describe(s: MayaState) -> str:
    if s.charge == 0:
        return "v(" + ",".join(map(str, s.partition())) + ")"
    return f"charge {s.charge}: " + " ".join(str(x) for x in s.slots())


def verify_e0_vacuum(z_order: int, unit: Optional[TruncSeries] = None) -> CheckResult:
    """``zeta(z) E_0(z)|0> = |0>`` with ``1/zeta = z^-1 * unit``.

    ``unit`` is the series ``z / zeta(z)``; it is derived from ``zeta`` unless given.
    """
    z1 = z_order + 1
    zeta = zeta_series(z1)
    if unit is None:
        unit = zeta.shift(-1).truncate(z1).reciprocal()
    tilde = e_tilde(0, vacuum(), z1)
    result: Dict[MayaState, TruncSeries] = {}
    for st, ser in tilde.items():
        result[st] = (zeta * ser).truncate(z_order)
    # zeta(z) * z^-1 * unit(z) = (zeta(z)/z) * unit(z)
    scalar = (zeta.shift(-1).truncate(z1) * unit).truncate(z_order)
    result[VACUUM] = result[VACUUM] + scalar if VACUUM in result else scalar
    expected = TruncSeries([1], z_order)
    for st, ser in result.items():
        target = expected if st == VACUUM else TruncSeries.zero(z_order)
        idx = ser.first_difference(target)
        if idx is not None:
            return CheckResult("e0_vacuum", False, {"component": _describe(st), "z_degree": idx})
    return CheckResult("e0_vacuum", True)
