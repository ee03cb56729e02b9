import numpy as np
import pytest

from dqc1ent.bipartite import Bipartition, enumerate_bipartitions, is_ppt
from dqc1ent.circuits import cdqc1_unitary, haar_random_unitary
from dqc1ent.discord import (
    blocks,
    commutator_residual,
    discord_depolarization_check,
    is_zero_discord,
    min_offdiagonal_mass,
    offdiagonal_mass,
)
from dqc1ent.states import bell_state, depolarize, dqc1_state, random_density_matrix
from dqc1ent.tensor import embed, kron


def cq_state(rng, qa, qb, rotate=True):
    """sum_l p_l |l><l| (x) rho_l, optionally in a random basis of A."""
    da = 2**qa
    p = rng.dirichlet(np.ones(da))
    rho = sum(p[l] * kron(np.outer(np.eye(da)[l], np.eye(da)[l]), random_density_matrix(qb, rng)) for l in range(da))
    if rotate:
        w = kron(haar_random_unitary(qa, rng), np.eye(2**qb))
        rho = w @ rho @ w.conj().T
    return rho


def cdqc1_output(n, seed, alpha=0.0):
    u = cdqc1_unitary(haar_random_unitary(n, seed))
    return u @ dqc1_state(n, alpha) @ u.conj().T


def test_blocks_reassemble(rng):
    rho = random_density_matrix(3, rng)
    bp = Bipartition(3, (0,))
    dec = blocks(rho, bp)
    np.testing.assert_allclose(dec.reassemble(), rho)
    np.testing.assert_allclose(dec.blocks[0, 1], rho[:4, 4:])
    # non-leading party: permuted but same block count
    assert blocks(rho, Bipartition(3, (2,))).blocks.shape == (2, 2, 4, 4)


def test_blocks_of_product_and_cq(rng):
    ra, rb = random_density_matrix(1, rng), random_density_matrix(2, rng)
    dec = blocks(kron(ra, rb), Bipartition(3, (0,)))
    for i in range(2):
        for j in range(2):
            np.testing.assert_allclose(dec.blocks[i, j], ra[i, j] * rb, atol=1e-15)
    cq = cq_state(rng, 1, 2, rotate=False)
    dec = blocks(cq, Bipartition(3, (0,)))
    assert np.abs(dec.blocks[0, 1]).max() < 1e-15


def test_examples(rng):
    bp = Bipartition(2, (0,))
    assert not is_zero_discord(bell_state(), bp).zero_discord
    assert is_zero_discord(np.eye(4) / 4, bp).zero_discord
    for qa, qb in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        rho = cq_state(rng, qa, qb)
        bp = Bipartition(qa + qb, tuple(range(qa)))
        r = is_zero_discord(rho, bp)
        assert r.zero_discord, r.residual
        # the returned basis actually kills the off-diagonal blocks
        assert offdiagonal_mass(rho, bp, r.basis) < 1e-20


def test_cdqc1_output_measured_sides():
    for n in (2, 3):
        for seed in range(5):
            rho = cdqc1_output(n, seed)
            assert not is_zero_discord(rho, Bipartition(n + 1, (0,))).zero_discord
            assert is_zero_discord(rho, Bipartition(n + 1, tuple(range(1, n + 1)))).zero_discord


def test_measured_party_is_not_symmetric(rng):
    # classical on A but generic on B
    rho = cq_state(rng, 1, 1)
    bp = Bipartition(2, (0,))
    assert is_zero_discord(rho, bp).zero_discord
    assert not is_zero_discord(rho, bp.complement()).zero_discord


def test_against_brute_force_oracle(rng):
    tol_mass = 1e-10
    cases = [cq_state(rng, 1, 2), cq_state(rng, 2, 1), random_density_matrix(2, rng), cdqc1_output(2, 4)]
    cases.append(kron(random_density_matrix(1, rng), random_density_matrix(1, rng)))
    for rho in cases:
        q = int(np.log2(rho.shape[0]))
        for bp in [Bipartition(q, (0,)), Bipartition(q, (q - 1,))]:
            mass = min_offdiagonal_mass(rho, bp, restarts=6, seed=1)
            assert is_zero_discord(rho, bp).zero_discord == (mass < tol_mass), (bp, mass)


def test_depolarization_invariance(rng):
    for i in range(10):
        rho = random_density_matrix(3, rng, rank=int(rng.integers(1, 8)))
        bp = Bipartition(3, (int(rng.integers(3)),))
        assert discord_depolarization_check(rho, bp, [0, 0.3, 0.9])
        cq = cq_state(rng, 1, 2)
        assert discord_depolarization_check(cq, Bipartition(3, (0,)), [0, 0.3, 0.9])


def test_local_unitary_on_unmeasured_party(rng):
    rho = random_density_matrix(3, rng)
    bp = Bipartition(3, (0,))
    w = embed(haar_random_unitary(2, rng), [1, 2], 3)
    r1 = commutator_residual(rho, bp)
    r2 = commutator_residual(w @ rho @ w.conj().T, bp)
    assert r1 == pytest.approx(r2, rel=1e-8)


def test_entangled_implies_discordant(rng):
    checked = 0
    for _ in range(40):
        rho = random_density_matrix(3, rng, rank=int(rng.integers(1, 4)))
        for bp in enumerate_bipartitions(3):
            if not is_ppt(rho, bp).ppt:
                checked += 1
                assert not is_zero_discord(rho, bp).zero_discord
                assert not is_zero_discord(rho, bp.complement()).zero_discord
    assert checked > 50


def test_zero_discord_states_are_ppt(rng):
    for _ in range(20):
        rho = depolarize(cq_state(rng, 1, 2), rng.uniform())
        assert is_ppt(rho, Bipartition(3, (0,))).ppt
