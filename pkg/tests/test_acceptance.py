"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""

import importlib
import pkgutil
import time
from fractions import Fraction
from math import factorial

import pytest

import hurwitzq
from hurwitzq import fock, hurwitz, spectral
from hurwitzq.hurwitz import HurwitzParams, connected_hurwitz, f01_coefficient, f01_part, triple_path_agreement
from hurwitzq.quantum import (
    BiPoly,
    ExpDiag,
    MulX,
    OperatorExpr,
    Word,
    Y,
    monomial_grid,
    operators_agree,
    quantum_operator,
    quantum_operator_raw,
    semiclassical_check,
    verify_annihilation,
    verify_recurrence,
    z_principal,
)
from hurwitzq.rings import ExpPoly, LambdaPoly
from hurwitzq.series import TruncSeries, exp_series, lambert_w
from hurwitzq.spectral import SpectralFamily, omega01_match, verify_spectral_equation, y_series

PAIRS3 = [(r, q) for r in (1, 2, 3) for q in (1, 2, 3)]
PAIRS2 = [(r, q) for r in (1, 2) for q in (1, 2)]
HALF = Fraction(1, 2)
SUMMARY = []  # repeated by conftest in the terminal summary


def clear_caches():
    for info in pkgutil.iter_modules(hurwitzq.__path__):
        if info.name == "__main__":
            continue
        module = importlib.import_module(f"hurwitzq.{info.name}")
        for obj in vars(module).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def report(number, title, limit, body):
    """Run ``body`` (returns a list of failure strings), print one line, assert.

    Memo tables are cleared first so the runtime is measured cold.
    """
    clear_caches()
    start = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        failures = list(failures) + [f"runtime {elapsed:.2f}s exceeds {limit}s"]
    status = "PASS" if not failures else "FAIL"
    detail = "" if not failures else " :: " + "; ".join(failures[:3])
    line = f"criterion {number:>2} {status} ({elapsed:6.2f}s / {limit}s) {title}{detail}"
    SUMMARY.append(line)
    print("\n" + line, flush=True)
    assert not failures, failures


# -- 1 ----------------------------------------------------------------------------------

def test_criterion_01_lambert():
    def body():
        W = lambert_w(60)
        lhs = W * exp_series(W)
        idx = lhs.first_difference(TruncSeries.variable(60))
        return [] if idx is None else [f"coefficient {idx}"]

    report(1, "Lambert identity to order 60", 1, body)


# -- 2 ----------------------------------------------------------------------------------

def closed_forms_failures():
    out = []
    for r, q in PAIRS3:
        families = ["double", "mixed"] if r == 1 else ["mixed"]
        if q == 1:
            families.append("spin")
        for fam in families:
            start = 1 if fam == "double" else 0
            for n in range(start, 7):
                d = f01_part(n, r, q, fam)
                p = HurwitzParams(r, q, 0, (d,))
                got = connected_hurwitz(p).value / factorial(p.m)
                if got != f01_coefficient(n, r, q, fam):
                    out.append(f"(r,q,n,{fam})=({r},{q},{n}) got {got}")
    # the three closed forms, evaluated directly
    for n in range(1, 7):
        for q in (1, 2, 3):
            if f01_coefficient(n, 1, q, "double") != Fraction(n * q) ** (n - 2) / factorial(n):
                out.append(f"double form n={n} q={q}")
        for r in (1, 2, 3):
            if f01_coefficient(n, r, 1, "spin") != Fraction(r * n + 1) ** (n - 2) / factorial(n):
                out.append(f"spin form n={n} r={r}")
            for q in (1, 2, 3):
                if f01_coefficient(n, r, q, "mixed") != q * Fraction((n * r + 1) * q) ** (n - 2) / factorial(n):
                    out.append(f"mixed form n={n} r={r} q={q}")
    return out


def test_criterion_02_closed_forms():
    report(2, "(0,1) closed forms, (r,q) in {1,2,3}^2, n <= 6", 120, closed_forms_failures)


# -- 3 ----------------------------------------------------------------------------------

def test_criterion_03_triple_oracle():
    def body():
        out = []
        for r, q in PAIRS2:
            res = triple_path_agreement(r, q, 5, 5)
            if not res:
                out.append(f"(r,q)=({r},{q}) {res.counterexample}")
        return out

    report(3, "character / Fock / log Z agree, |mu| <= 5, m <= 5", 300, body)


# -- 4 ----------------------------------------------------------------------------------

def test_criterion_04_commutators():
    def body():
        out = []
        states = fock.states_up_to(6)
        for k in range(-3, 4):
            for l in range(-3, 4):
                res = fock.verify_commutator(k, l, 5, states)
                if not res:
                    out.append(f"(k,l)=({k},{l}) {res.counterexample}")
        res = fock.verify_e0_vacuum(10)
        if not res:
            out.append(f"E_0 vacuum {res.counterexample}")
        return out

    report(4, "commutators on energy <= 6, |k|,|l| <= 3, z-order 5; E_0|0>", 60, body)


# -- 5 ----------------------------------------------------------------------------------

def test_criterion_05_spectral():
    def body():
        out = []
        for r, q in PAIRS3:
            fam = SpectralFamily(r, q, 40)
            for res in (verify_spectral_equation(fam), omega01_match(fam, 4, method="character")):
                if not res:
                    out.append(f"{res.name} (r,q)=({r},{q}) {res.counterexample}")
        return out

    report(5, "spectral curves N = 40 and omega_{0,1} match n <= 4", 60, body)


# -- 6 ----------------------------------------------------------------------------------

def test_criterion_06_quantum():
    def body():
        out = []
        grid = monomial_grid(15, half=True)
        for r, q in PAIRS3:
            for raw in (False, True):
                res = verify_annihilation(r, q, 30, raw=raw)
                if not res:
                    out.append(f"annihilation (r,q,raw)=({r},{q},{raw}) {res.counterexample}")
            res = operators_agree(quantum_operator(r, q), quantum_operator_raw(r, q), grid)
            if not res:
                out.append(f"forms disagree (r,q)=({r},{q}) {res.counterexample}")
        return out

    report(6, "quantum curves annihilate Z at N = 30; raw == simplified on x^n, n <= 15", 120, body)


# -- 7 ----------------------------------------------------------------------------------

def test_criterion_07_recurrences():
    def body():
        out = []
        for r, q in [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)]:
            res = verify_recurrence(r, q, 20)
            if not res:
                out.append(f"(r,q)=({r},{q}) {res.counterexample}")
        return out

    report(7, "coefficient recurrences for d <= 20", 10, body)


# -- 8 ----------------------------------------------------------------------------------

def test_criterion_08_semiclassical():
    def body():
        out = []
        for r, q in PAIRS3:
            for raw in (False, True):
                res = semiclassical_check(r, q, 40, raw=raw)
                if not res:
                    out.append(f"(r,q,raw)=({r},{q},{raw}) {res.counterexample}")
        return out

    report(8, "semiclassical symbol vanishes on y(x) to N = 40", 30, body)


# -- 9 ----------------------------------------------------------------------------------

def z_double_direct(q, N):
    """sum_i x^(iq) / (i! (lam q)^i) exp(lam((iq - 1/2)^2 - 1/4)/2)."""
    coeffs = {}
    for i in range(N // q + 1):
        P = LambdaPoly.monomial(1, ((i * q - HALF) ** 2 - HALF**2) / 2)
        coeffs[Fraction(i * q)] = ExpPoly.term(Fraction(1, factorial(i) * q**i), -i, P)
    return coeffs


def z_spin_direct(r, N):
    """sum_d x^d / (lam^d d!) exp(lam^r ((d - 1/2)^(r+1) - (-1/2)^(r+1)) / (r+1))."""
    coeffs = {}
    for d in range(N + 1):
        P = LambdaPoly.monomial(r, ((d - HALF) ** (r + 1) - (-HALF) ** (r + 1)) / (r + 1))
        coeffs[Fraction(d)] = ExpPoly.term(Fraction(1, factorial(d)), -d, P)
    return coeffs


def specialization_failures():
    out = []
    grid = monomial_grid(15, half=True)
    for q in (1, 2, 3):
        # Hurwitz values and closed forms at r = 1
        for n in range(1, 7):
            if f01_coefficient(n, 1, q, "mixed") != f01_coefficient(n + 1, 1, q, "double"):
                out.append(f"f01 r=1 q={q} n={n}")
        # spectral curve: -(1/q) W(-q x^q)
        N = 30
        W = lambert_w(N // q)
        lit = TruncSeries.zero(N)
        for n in range(1, N // q + 1):
            lit = lit + TruncSeries.monomial(n * q, N, -W[n] * Fraction(-q) ** n / q)
        if y_series(SpectralFamily(1, q, N)) != lit:
            out.append(f"y_series r=1 q={q}")
        # quantum side
        if z_principal(1, q, 30).coeffs != z_double_direct(q, 30):
            out.append(f"Z r=1 q={q}")
        if not operators_agree(quantum_operator(1, q, "mixed"), quantum_operator(1, q, "double"), grid):
            out.append(f"operator r=1 q={q}")
        for fam in ("double", "mixed"):
            if not verify_recurrence(1, q, 20, family=fam):
                out.append(f"recurrence r=1 q={q} {fam}")
            if not verify_annihilation(1, q, 30, family=fam):
                out.append(f"annihilation r=1 q={q} {fam}")
            if not semiclassical_check(1, q, 40, family=fam):
                out.append(f"semiclassical r=1 q={q} {fam}")
    for r in (1, 2, 3):
        for n in range(0, 7):
            if f01_coefficient(n, r, 1, "mixed") != f01_coefficient(n, r, 1, "spin"):
                out.append(f"f01 q=1 r={r} n={n}")
        # (W(-r x^r)/(-r))^{1/r}: compare r-th powers
        N = 30
        y = y_series(SpectralFamily(r, 1, N + 1))
        W = lambert_w(N // r)
        target = TruncSeries.zero(N)
        for n in range(1, N // r + 1):
            target = target + TruncSeries.monomial(n * r, N, W[n] * Fraction(-r) ** n / (-r))
        if (y**r).truncate(N) != target:
            out.append(f"y_series q=1 r={r}")
        if z_principal(r, 1, 30).coeffs != z_spin_direct(r, 30):
            out.append(f"Z q=1 r={r}")
        if not operators_agree(quantum_operator(r, 1, "mixed"), quantum_operator(r, 1, "spin"), grid):
            out.append(f"operator q=1 r={r}")
        if not operators_agree(quantum_operator_raw(r, 1, "mixed"), quantum_operator_raw(r, 1, "spin"), grid):
            out.append(f"raw operator q=1 r={r}")
        for fam in ("spin", "mixed"):
            if not verify_recurrence(r, 1, 20, family=fam):
                out.append(f"recurrence q=1 r={r} {fam}")
            if not verify_annihilation(r, 1, 30, family=fam):
                out.append(f"annihilation q=1 r={r} {fam}")
            if not semiclassical_check(r, 1, 40, family=fam):
                out.append(f"semiclassical q=1 r={r} {fam}")
    if not operators_agree(quantum_operator(1, 1, "spin"), quantum_operator(1, 1, "double"), grid):
        out.append("spin(1) vs double(1)")
    return out


def test_criterion_09_specialization():
    report(9, "mixed paths at r = 1 and q = 1 reproduce the double and spin values", 120, specialization_failures)


# -- 10 ---------------------------------------------------------------------------------

def mutate_generator(g):
    if isinstance(g, MulX):
        return MulX(g.a + 1)
    if isinstance(g, Y):
        return MulX(0)
    return ExpDiag(g.R + BiPoly.y(1))


def generator_mutants(expr):
    for wi, w in enumerate(expr.words):
        for gi, g in enumerate(w.gens):
            gens = list(w.gens)
            gens[gi] = mutate_generator(g)
            words = list(expr.words)
            words[wi] = Word(tuple(gens), w.scalar)
            yield (wi, gi), OperatorExpr(tuple(words))


def soundness_failures():
    out = []
    for r, q in PAIRS3:
        N = 16
        # spectral: every coefficient of y
        fam = SpectralFamily(r, q, N)
        y = y_series(fam)
        for i in range(N + 1):
            res = verify_spectral_equation(fam, y + TruncSeries.monomial(i, N, 1))
            if res or res.counterexample.get("coefficient") != i:
                out.append(f"spectral missed index {i} (r,q)=({r},{q})")
            res = semiclassical_check(r, q, N, y=y + TruncSeries.monomial(i, N, 1))
            if res or res.counterexample.get("coefficient") != i:
                out.append(f"semiclassical missed index {i} (r,q)=({r},{q})")
        # annihilation and recurrence: every a_d
        z = z_principal(r, q, N)
        for d in range(0, (N - q) // q + 1):
            e = q * d
            bad = z.replace(e, z[e] + ExpPoly.term(1, 0))
            res = verify_annihilation(r, q, N, z=bad)
            # y kills x^0, so a corrupted a_0 first shows up after the x^q shift
            where = e if d else q
            if res or Fraction(res.counterexample["exponent"]) != where:
                out.append(f"annihilation missed a_{d} (r,q)=({r},{q})")
            res = verify_recurrence(r, q, (N - q) // q - 1 if d else 0, z=bad)
            if res:
                out.append(f"recurrence missed a_{d} (r,q)=({r},{q})")
        # every generator of both operator forms
        for raw in (False, True):
            expr = (quantum_operator_raw if raw else quantum_operator)(r, q)
            for loc, bad in generator_mutants(expr):
                res = verify_annihilation(r, q, N, operator=bad)
                if res or "exponent" not in res.counterexample:
                    out.append(f"annihilation missed generator {loc} raw={raw} (r,q)=({r},{q})")
    # omega01: every closed-form coefficient
    original = spectral.f01_coefficient
    try:
        for r, q in [(1, 2), (2, 1), (2, 2)]:
            for n_bad in range(5):
                spectral.f01_coefficient = lambda n, r_, q_, fam, nb=n_bad: original(n, r_, q_, fam) + (1 if n == nb else 0)
                res = omega01_match(SpectralFamily(r, q, 40), 4)
                if res or res.counterexample.get("coefficient") != f01_part(n_bad, r, q, "mixed"):
                    out.append(f"omega01 missed n={n_bad} (r,q)=({r},{q})")
    finally:
        spectral.f01_coefficient = original
    # commutators: corrupt one coefficient of zeta, then one normal-ordering sign
    original_zeta = fock.zeta_series
    try:
        for idx in (1, 3):
            def bad_zeta(order, scale_by=Fraction(1), idx=idx):
                s = original_zeta(order, scale_by)
                return s + TruncSeries.monomial(idx, order, 1) if idx <= order else s
            fock.zeta_series = bad_zeta
            res = fock.verify_commutator(2, -2, 5, fock.states_up_to(2))
            if res or "z_degree" not in res.counterexample:
                out.append(f"commutator missed zeta[{idx}]")
    finally:
        fock.zeta_series = original_zeta
    original_terms = fock._bilinear_terms

    def flipped(s, n):
        for st, sign, k in original_terms(s, n):
            yield st, (-sign if (n == 0 and k == HALF) else sign), k

    try:
        fock._bilinear_terms = flipped
        res = fock.verify_commutator(1, -1, 5, fock.states_up_to(2))
        if res or "z_degree" not in res.counterexample:
            out.append("commutator missed a flipped normal-ordering sign")
    finally:
        fock._bilinear_terms = original_terms
    # E_0 on the vacuum: corrupt one coefficient of z / zeta(z)
    z1 = 7
    unit = fock.zeta_series(z1).shift(-1).truncate(z1).reciprocal()
    for idx in range(z1):
        res = fock.verify_e0_vacuum(6, unit + TruncSeries.monomial(idx, z1, 1))
        if res or res.counterexample.get("z_degree") != idx:
            out.append(f"E_0 vacuum missed unit[{idx}]")
    # triple path: corrupt the Fock route at one point
    original_fock = hurwitz.disconnected_vev_fock
    hurwitz._connected_cached.cache_clear()
    try:
        hurwitz.disconnected_vev_fock = lambda m, mu, r, q: original_fock(m, mu, r, q) + (1 if (m, mu) == (3, (2, 1)) else 0)
        res = triple_path_agreement(1, 1, 3, 3)
        if res or res.counterexample.get("mu") != "2,1" or res.counterexample.get("m") != 3:
            out.append("triple path missed a corrupted Fock value")
    finally:
        hurwitz.disconnected_vev_fock = original_fock
        hurwitz._connected_cached.cache_clear()
    return out


def test_criterion_10_soundness():
    report(10, "mutations of coefficients and generators are caught and located", 300, soundness_failures)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
