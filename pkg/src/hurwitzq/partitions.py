"""Integer partitions, border strips and symmetric-group characters.

Partitions are plain tuples of weakly decreasing positive ints; ``()`` is the
empty partition.  Border strips (ribbons) are added and removed on beta-sets
(first-column hook lengths), where an n-ribbon move is a bead sliding by n
and its height is the number of beads jumped over.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

Partition = Tuple[int, ...]


class PartitionError(ValueError):
    pass


def make_partition(parts: Sequence[int]) -> Partition:
    """Validate and sort ``parts`` into a partition."""
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in parts):
        raise PartitionError(f"parts must be positive: {parts}")
    return parts


def parse_partition(text: str) -> Partition:
    """Parse ``"3,1,1"``; the empty string is the empty partition."""
    text = text.strip()
    if not text:
        return ()
    try:
        return make_partition(int(t) for t in text.split(","))
    except ValueError as exc:
        raise PartitionError(f"malformed partition {text!r}: {exc}") from None


def format_partition(parts: Partition) -> str:
    return ",".join(str(p) for p in parts)


def partitions_of(n: int, max_part: int | None = None) -> List[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise PartitionError("n must be non-negative")
    return list(_rev_lex(n, n if max_part is None else max_part))


def _rev_lex(n: int, max_part: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _rev_lex(n - first, first):
            yield (first,) + rest


def multiplicities(mu: Partition) -> Counter:
    return Counter(mu)


def z_factor(mu: Partition) -> int:
    """Centralizer order ``prod_i i^m_i m_i!``."""
    out = 1
    for part, mult in Counter(mu).items():
        out *= part**mult * factorial(mult)
    return out


def automorphism_factor(mu: Partition) -> int:
    """``prod_i m_i!`` -- the number of permutations of equal parts."""
    out = 1
    for mult in Counter(mu).values():
        out *= factorial(mult)
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def contents(lam: Partition) -> List[int]:
    return [j - i for i, row in enumerate(lam) for j in range(row)]


# -- beta-sets ---------------------------------------------------------------

def _beta(lam: Partition, length: int) -> List[int]:
    padded = list(lam) + [0] * (length - len(lam))
    return [padded[i] + length - 1 - i for i in range(length)]


def _from_beta(beta: Sequence[int]) -> Partition:
    b = sorted(beta, reverse=True)
    L = len(b)
    return tuple(p for p in (b[i] - (L - 1 - i) for i in range(L)) if p > 0)


def ribbons_removable(lam: Partition, n: int) -> List[Tuple[Partition, int]]:
    """Partitions obtained by removing an n-ribbon from ``lam``, with sign ``(-1)^height``."""
    if n < 1:
        raise PartitionError("ribbon size must be positive")
    beta = _beta(lam, len(lam))
    bset = set(beta)
    out = []
    for b in beta:
        c = b - n
        if c < 0 or c in bset:
            continue
        height = sum(1 for x in beta if c < x < b)
        new = [x for x in beta if x != b] + [c]
        out.append((_from_beta(new), -1 if height % 2 else 1))
    out.sort(key=lambda t: t[0], reverse=True)
    return out


def ribbons_addable(lam: Partition, n: int) -> List[Tuple[Partition, int]]:
    """Partitions obtained by adding an n-ribbon to ``lam``, with sign ``(-1)^height``."""
    if n < 1:
        raise PartitionError("ribbon size must be positive")
    beta = _beta(lam, len(lam) + n)
    bset = set(beta)
    out = []
    for b in beta:
        c = b + n
        if c in bset:
            continue
        height = sum(1 for x in beta if b < x < c)
        new = [x for x in beta if x != b] + [c]
        out.append((_from_beta(new), -1 if height % 2 else 1))
    out.sort(key=lambda t: t[0], reverse=True)
    return out


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    total = 0
    for smaller, sign in ribbons_removable(lam, mu[0]):
        total += sign * _mn(smaller, mu[1:])
    return total


def character(lam: Partition, mu: Partition) -> int:
    """``chi^lam`` on cycle type ``mu`` by the Murnaghan-Nakayama rule."""
    lam, mu = tuple(lam), make_partition(mu)
    if sum(lam) != sum(mu):
        raise PartitionError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(lam, mu)


@lru_cache(maxsize=None)
def character_column(mu: Partition) -> Dict[Partition, int]:
    """``{lam: chi^lam_mu}`` over all ``lam`` with nonzero character.

    Built forward by stacking ribbons of sizes ``mu_i`` onto the empty
    partition; this visits only the support, which matters when ``mu`` has
    few large parts.
    """
    col: Dict[Partition, int] = {(): 1}
    for part in make_partition(mu):
        nxt: Dict[Partition, int] = {}
        for lam, val in col.items():
            for bigger, sign in ribbons_addable(lam, part):
                nxt[bigger] = nxt.get(bigger, 0) + sign * val
        col = {lam: v for lam, v in nxt.items() if v}
    return col


def character_table(n: int) -> Dict[Tuple[Partition, Partition], int]:
    parts = partitions_of(n)
    return {(lam, mu): character(lam, mu) for lam in parts for mu in parts}


def dimension(lam: Partition) -> int:
    """Hook-length formula."""
    lam = tuple(lam)
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(sum(lam)) // hooks


def shifted_power_sum(lam: Partition, j: int) -> Fraction:
    """``sum_i (lam_i - i + 1/2)^j - (-i + 1/2)^j``."""
    if j < 1:
        raise PartitionError("j must be positive")
    half = Fraction(1, 2)
    total = Fraction(0)
    for i, part in enumerate(lam, start=1):
        total += (part - i + half) ** j - (-i + half) ** j
    return total


def completed_cycle_weight(lam: Partition, r: int) -> Fraction:
    """Eigenvalue ``p_{r+1}(lam)/(r+1)`` of ``r! [w^(r+1)] E_0(w)`` on ``v_lam``."""
    return shifted_power_sum(lam, r + 1) / (r + 1)
