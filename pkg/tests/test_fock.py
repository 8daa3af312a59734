import random
from fractions import Fraction
from math import factorial

import pytest

from hurwitzq import fock
from hurwitzq.fock import (
    VACUUM,
    alpha,
    basis_vector,
    completed_cycle,
    e_tilde,
    e_tilde_coeff,
    psi,
    psi_star,
    state_from_partition,
    states_up_to,
    vacuum,
    verify_commutator,
    verify_e0_vacuum,
    vev,
)
from hurwitzq.partitions import character, partitions_of, shifted_power_sum
from hurwitzq.series import TruncSeries

H = Fraction(1, 2)


def v(*lams):
    out = {}
    for lam, c in lams:
        out = fock.add(out, fock.scale(basis_vector(lam), c))
    return out


def test_psi_examples():
    out = psi(H, vacuum())
    (state, c), = out.items()
    assert state.charge == 1 and state.occupied(0) and c == 1
    assert psi(-H, vacuum()) == {}
    # Psi_{1/2} Psi*_{-1/2} = -Psi*_{-1/2} Psi_{1/2}, and the former is alpha_{-1} on |0>
    assert psi_star(-H, psi(H, vacuum())) == v(((1,), -1))
    assert psi(H, psi_star(-H, vacuum())) == basis_vector((1,))


def random_vectors(seed, count=6):
    rng = random.Random(seed)
    states = states_up_to(4)
    # add a few charged states
    states += [next(iter(psi(k, {s: 1}))) for s in states[:4] for k in (H, H + 1) if psi(k, {s: 1})]
    states += [next(iter(psi_star(k, {s: 1}))) for s in states[:4] for k in (-H, -H - 1) if psi_star(k, {s: 1})]
    for _ in range(count):
        picks = rng.sample(states, 3)
        yield {s: Fraction(rng.randint(-3, 3) or 1) for s in picks}


def anticommutator(a, b, vec):
    return fock.add(a(b(vec)), b(a(vec)))


SLOTS = [Fraction(2 * i + 1, 2) for i in range(-4, 4)]


@pytest.mark.parametrize("seed", range(4))
def test_anticommutators_on_random_states(seed):
    for vec in random_vectors(seed):
        for i in SLOTS:
            for j in SLOTS:
                got = anticommutator(lambda x: psi(i, x), lambda x: psi_star(j, x), vec)
                assert got == (vec if i == j else {})
                assert anticommutator(lambda x: psi(i, x), lambda x: psi(j, x), vec) == {}
                assert anticommutator(lambda x: psi_star(i, x), lambda x: psi_star(j, x), vec) == {}


def test_partition_bijection_round_trip():
    for n in range(13):
        for lam in partitions_of(n):
            s = state_from_partition(lam)
            assert s.charge == 0
            assert s.partition() == lam
            assert s.energy == n
    assert state_from_partition(()) == VACUUM


def test_alpha_examples():
    assert alpha(-1, vacuum()) == basis_vector((1,))
    assert alpha(-2, vacuum()) == v(((2,), 1), ((1, 1), -1))
    assert alpha(-1, alpha(-1, vacuum())) == v(((2,), 1), ((1, 1), 1))


@pytest.mark.parametrize("m", range(1, 6))
def test_heisenberg_on_vacuum(m):
    lhs = fock.add(alpha(m, alpha(-m, vacuum())), fock.scale(alpha(-m, alpha(m, vacuum())), -1))
    assert lhs == fock.scale(vacuum(), m)


def test_heisenberg_on_states():
    for s in states_up_to(4):
        for m in range(1, 4):
            for n in range(-3, 4):
                if n == 0:
                    continue
                vec = {s: Fraction(1)}
                comm = fock.add(alpha(m, alpha(n, vec)), fock.scale(alpha(n, alpha(m, vec)), -1))
                assert comm == (fock.scale(vec, m) if m + n == 0 else {})


def alpha_chain_vev(mu, lam):
    vec = basis_vector(lam)
    for part in reversed(mu):
        vec = alpha(part, vec)
    return vev(vec)


@pytest.mark.parametrize("n", range(1, 9))
def test_alpha_character_identity(n):
    parts = partitions_of(n)
    for lam in parts:
        for mu in parts:
            assert alpha_chain_vev(mu, lam) == character(lam, mu)


def test_e_tilde_vacuum_examples():
    assert e_tilde(0, vacuum(), 6) == {}
    assert e_tilde(1, vacuum(), 6) == {}
    for n in range(1, 4):
        for j in range(5):
            assert e_tilde_coeff(n, j, vacuum()) == {}


def test_e0_diagonal_eigenvalue():
    # eigenvalue sum_i [e^{z(lam_i - i + 1/2)} - e^{z(-i + 1/2)}]
    for lam in partitions_of(5) + partitions_of(3):
        for j in range(6):
            expected = sum(
                (Fraction(lam[i] - i) - H) ** j - (Fraction(-i) - H) ** j for i in range(len(lam))
            ) / factorial(j)
            got = e_tilde_coeff(0, j, basis_vector(lam))
            assert got == ({state_from_partition(lam): expected} if expected else {})


def test_e0_z2_on_v2():
    assert e_tilde_coeff(0, 2, basis_vector((2,))) == basis_vector((2,))


def test_shifted_power_sum_examples():
    assert shifted_power_sum((1,), 2) == 0
    assert shifted_power_sum((2,), 2) == 2
    assert shifted_power_sum((1, 1), 2) == -2


def test_completed_cycle_eigenvalue():
    for lam in partitions_of(4):
        for r in range(1, 4):
            got = completed_cycle(r, basis_vector(lam))
            w = shifted_power_sum(lam, r + 1) / (r + 1)
            assert got == ({state_from_partition(lam): w} if w else {})


def test_vev_examples():
    assert vev(vacuum()) == 1
    assert vev(alpha(1, alpha(-1, vacuum()))) == 1
    vec = alpha(-1, alpha(-1, vacuum()))
    vec = completed_cycle(1, vec)
    value = vev(alpha(2, vec)) / 2 / factorial(2)
    assert value == Fraction(1, 2)


def test_inner_orthonormal():
    a, b = basis_vector((2, 1)), basis_vector((3,))
    assert fock.inner(a, a) == 1
    assert fock.inner(a, b) == 0


@pytest.mark.parametrize(
    "k,l,lam",
    [(1, -1, ()), (2, 3, (2, 1)), (0, 0, (2,)), (-2, 2, (1, 1)), (3, -1, (3,)), (-1, -2, ())],
)
def test_commutator_examples(k, l, lam):
    assert verify_commutator(k, l, 5, [state_from_partition(lam)])


def test_commutator_grid_small():
    states = states_up_to(3)
    for k in range(-2, 3):
        for l in range(-2, 3):
            assert verify_commutator(k, l, 3, states), (k, l)


def test_e0_vacuum_identity():
    assert verify_e0_vacuum(10)


def test_zeta_series():
    z = fock.zeta_series(5)
    assert z == TruncSeries([0, 1, 0, Fraction(1, 24), 0, Fraction(1, 1920)], 5)
