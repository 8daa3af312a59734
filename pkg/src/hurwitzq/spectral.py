"""Spectral curves ``x = y^(1/q) exp(-y^r)`` as exact series identities.

Raising the curve to the q-th power gives the single-valued form
``y = x^q exp(q y^r)``, which is what gets checked.  Its solution is
``y = x^q (W(-rq x^(rq)) / (-rq x^(rq)))^(1/r)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .hurwitz import f01_coefficient, f01_part, genus0_one_part
from .report import CheckResult
from .series import TruncSeries, exp_series, w_power_ratio


@dataclass(frozen=True)
class SpectralFamily:
    r: int
    q: int
    N: int = 30

    def __post_init__(self):
        if self.r < 1 or self.q < 1:
            raise ValueError("r and q must be positive")
        if self.N < self.q:
            raise ValueError("truncation order must be at least q")

    @property
    def name(self) -> str:
        if self.r == 1 and self.q == 1:
            return "simple"
        if self.r == 1:
            return "q-double"
        if self.q == 1:
            return "r-spin"
        return "mixed"


def y_series(family: SpectralFamily) -> TruncSeries:
    """``y(x) = x^q sum_n (1/r)(n + 1/r)^(n-1) (rq x^(rq))^n / n!``."""
    r, q, N = family.r, family.q, family.N
    ratio = w_power_ratio(Fraction(1, r), N)
    inner = ratio.substitute_power(r * q, Fraction(-r * q))
    return inner.shift(q)


def spectral_residual(y: TruncSeries, r: int, q: int) -> TruncSeries:
    """``y - x^q exp(q y^r)``."""
    return y - exp_series((y**r).scale(q)).shift(q)


def verify_spectral_equation(family: SpectralFamily, y: Optional[TruncSeries] = None) -> CheckResult:
    """Check ``y = x^q exp(q y^r)`` to order N; ``y`` defaults to :func:`y_series`."""
    y = y_series(family) if y is None else y
    info = {"r": family.r, "q": family.q, "order": family.N}
    if y[0] != 0:
        # the right side has no constant term, and exp(q y^r) is not formal
        return CheckResult("spectral", False, {"coefficient": 0, "residual": str(y[0])}, info)
    residual = spectral_residual(y, family.r, family.q)
    for i, c in enumerate(residual.coeffs):
        if c != 0:
            return CheckResult("spectral", False, {"coefficient": i, "residual": str(c)}, info)
    return CheckResult("spectral", True, info=info)


def f01_principal(r: int, q: int, n_max: int, method: Optional[str] = None) -> TruncSeries:
    """Principally specialised ``F_{0,1}(x)`` using terms ``n <= n_max``.

    ``method=None`` uses the closed forms; ``"character"`` or ``"fock"``
    recompute every coefficient from connected Hurwitz numbers.
    """
    top = f01_part(n_max, r, q, "mixed")
    coeffs = [Fraction(0)] * (top + 1)
    for n in range(n_max + 1):
        d = f01_part(n, r, q, "mixed")
        if method is None:
            coeffs[d] = f01_coefficient(n, r, q, "mixed")
        else:
            coeffs[d] = genus0_one_part(d, r, q, method)
    return TruncSeries(coeffs, top)


def omega01_match(family: SpectralFamily, n_max: int, method: Optional[str] = None) -> CheckResult:
    """Check ``x dF_{0,1}/dx = y(x)`` through x-degree ``(n_max r + 1) q``."""
    r, q = family.r, family.q
    F = f01_principal(r, q, n_max, method)
    lhs = F.derivative_euler()
    y = y_series(SpectralFamily(r, q, max(F.order, q)))
    info = {"r": r, "q": q, "n_max": n_max, "source": method or "closed-form"}
    idx = lhs.first_difference(y.truncate(F.order))
    if idx is not None:
        return CheckResult(
            "omega01",
            False,
            {"coefficient": idx, "x_dF": str(lhs[idx]), "y": str(y[idx])},
            info,
        )
    return CheckResult("omega01", True, info=info)
