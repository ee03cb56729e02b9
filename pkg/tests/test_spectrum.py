import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dqc1ent.errors import InvalidSpectrumError, UsageError
from dqc1ent.spectrum import (
    DegeneratePair,
    OrderingPair,
    OrderingSaturationWarning,
    consistent_sigma_minus,
    degenerate_pair_from_spectrum,
    degenerate_ppt_condition,
    dqc1_all_cuts_bounds,
    dqc1_alpha_threshold,
    hildebrand_ppt_from_spectrum,
    johnston_sfs,
    lambda_matrices,
    lambda_matrix,
    pairs_plus,
    realizable_orderings,
)
from dqc1ent.states import dqc1_spectrum, tau_state
from dqc1ent.tensor import hermitian_spectrum

GRID = np.round(np.arange(101) / 100, 2)


def random_spectrum(rng, d):
    """Random sorted spectrum, mixed toward uniform so both verdicts occur."""
    w = rng.uniform(0, 1) ** 0.25
    lam = w * np.full(d, 1 / d) + (1 - w) * rng.dirichlet(np.ones(d) * rng.uniform(0.2, 3))
    return np.sort(lam)[::-1]


def test_johnston_examples():
    assert johnston_sfs(np.full(8, 1 / 8)).holds
    assert not johnston_sfs(hermitian_spectrum(tau_state(2))).holds
    # the margin is literally rhs - l1
    lam = np.array([0.4, 0.3, 0.2, 0.1])
    assert johnston_sfs(lam).margin == pytest.approx(0.2 + 2 * math.sqrt(0.3 * 0.1) - 0.4)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_johnston_dqc1_threshold_is_half(n):
    for a in GRID:
        assert johnston_sfs(dqc1_spectrum(n, a)).holds == (a >= 0.5)


def test_johnston_two_qubit_threshold():
    # with only two qubits the repeated eigenvalues land on l_2 = l_+ and
    # l_3 = l_4 = l_-; solving (2-a) = a + 2 sqrt((2-a) a) gives a = 1 - 1/sqrt(2)
    root = 1 - 1 / math.sqrt(2)
    assert 2 * root**2 - 4 * root + 1 == pytest.approx(0, abs=1e-15)
    for a in GRID:
        assert johnston_sfs(dqc1_spectrum(1, a)).holds == (a >= root)


def test_johnston_invalid_input():
    with pytest.raises(InvalidSpectrumError, match="invalid spectrum"):
        johnston_sfs([0.1, 0.2, 0.3, 0.4])
    with pytest.raises(InvalidSpectrumError, match="invalid spectrum"):
        johnston_sfs([0.6, 0.3, 0.2, -0.1])
    with pytest.raises(InvalidSpectrumError):
        johnston_sfs([0.5, 0.3, 0.2])


def test_consistent_sigma_minus_examples():
    op = OrderingPair.from_vector([2.0, 1.0])
    assert op.sigma_plus == (1, 2, 3)
    assert op.sigma_minus == (1,)
    # x = (4, 2, 1): products 16 > 8 > 4 = 4 > 2 > 1, tie broken toward (1,3)
    op = OrderingPair.from_vector([4.0, 2.0, 1.0])
    assert op.rank_plus(0, 2) == 3 and op.rank_plus(1, 1) == 4
    assert op.sigma_minus == (1, 2, 3)  # (1,2) < (1,3) < (2,3)
    assert op.is_consistent()
    np.testing.assert_array_equal(consistent_sigma_minus(op.sigma_plus), consistent_sigma_minus(op.sigma_plus))


def brute_force_consistent(sigma_plus, p):
    """All orderings of strict pairs consistent with sigma_plus, by enumeration."""
    pp = pairs_plus(p)
    strict = [t for t, (i, j) in enumerate(pp) if i < j]
    found = []
    for perm in itertools.permutations(range(1, len(strict) + 1)):
        ok = all(
            perm[a] < perm[b]
            for a in range(len(strict))
            for b in range(len(strict))
            if sigma_plus[strict[a]] < sigma_plus[strict[b]]
        )
        if ok:
            found.append(perm)
    return found


@pytest.mark.parametrize("x", [[4, 3, 1], [4, 1.5, 1], [5, 4, 2, 1], [9, 3, 2, 1.5]])
def test_sigma_minus_unique_by_enumeration(x):
    op = OrderingPair.from_vector(x)
    found = brute_force_consistent(op.sigma_plus, op.p)
    assert found == [op.sigma_minus]


def test_realizable_orderings_counts():
    assert len(realizable_orderings(2, 100, 0)) == 1
    o3 = realizable_orderings(3, 2000, 0)
    assert len(o3) == 2
    expected = {OrderingPair.from_vector([4, 3, 1]), OrderingPair.from_vector([4, 1.5, 1])}
    assert o3.as_set() == expected
    assert all(op.is_consistent() for op in realizable_orderings(4, 10_000, 0))


def test_realizable_orderings_saturate_at_p4():
    for seed in range(10):
        small = realizable_orderings(4, 10_000, seed).as_set()
        big = realizable_orderings(4, 20_000, seed).as_set()
        assert big == small
        assert len(small) == 10


def test_realizable_orderings_errors_and_warning():
    with pytest.raises(UsageError, match="party dimension too large"):
        realizable_orderings(32)
    with pytest.warns(OrderingSaturationWarning):
        realizable_orderings(8, 2000, 0)


def test_lambda_matrix_p2():
    lam = np.array([0.4, 0.3, 0.2, 0.1])
    op = OrderingPair.from_vector([2, 1])
    expected = np.array([[lam[3], lam[2]], [-lam[0], lam[1]]])
    np.testing.assert_array_equal(lambda_matrix(lam, op), expected)
    np.testing.assert_array_equal(lambda_matrices(lam, np.array([op.sigma_plus]), 2)[0], expected)


def test_lambda_matrix_uniform_is_psd():
    d = 16
    for op in realizable_orderings(4, 10_000, 0):
        m = lambda_matrix(np.full(d, 1 / d), op)
        np.testing.assert_allclose(m + m.T, 2 / d * np.eye(4))


@pytest.mark.parametrize("k, n", [(1, 2), (2, 4), (2, 5), (3, 6)])
def test_lambda_matrix_degenerate_closed_form(k, n):
    alpha = 0.37
    lam = dqc1_spectrum(n, alpha)
    lp, lm = lam[0], lam[-1]
    p = 2**k
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrderingSaturationWarning)
        sample = realizable_orderings(p, 500, 0)
    for sp in sample.sigma_plus[:20]:
        m = lambda_matrix(lam, OrderingPair.from_sigma_plus(sp))
        np.testing.assert_allclose(m + m.T, (lp + lm) * np.eye(p) + (lm - lp) * np.ones((p, p)), atol=1e-15)


def test_lambda_matrix_errors():
    op = OrderingPair.from_vector([4, 3, 2, 1])
    with pytest.raises(InvalidSpectrumError, match="spectrum too short"):
        lambda_matrix(np.full(8, 1 / 8), op)


def test_hildebrand_matches_johnston_at_p2(rng):
    for d in (8, 16):
        verdicts = set()
        for _ in range(200):
            lam = random_spectrum(rng, d)
            j = johnston_sfs(lam)
            h = hildebrand_ppt_from_spectrum(lam, 1, int(math.log2(d)))
            assert j.holds == h.holds
            assert np.sign(j.margin) == np.sign(h.margin)
            verdicts.add(j.holds)
        assert verdicts == {True, False}


def test_hildebrand_p2_margin_algebra():
    # for p = 2 the minimum eigenvalue of L + L^T is
    # l_d + l_{d-2} - sqrt((l_d - l_{d-2})^2 + (l_{d-1} - l_1)^2)
    lam = np.array([0.3, 0.2, 0.15, 0.12, 0.1, 0.08, 0.03, 0.02])
    h = hildebrand_ppt_from_spectrum(lam, 1, 3)
    a, b, c = lam[-1], lam[-2], lam[-3]
    assert h.margin == pytest.approx(a + c - math.hypot(a - c, b - lam[0]), abs=1e-15)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_hildebrand_uniform(k):
    total = 2 * k + 1
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrderingSaturationWarning)
        assert hildebrand_ppt_from_spectrum(np.full(2**total, 2.0**-total), k, total).holds


def test_hildebrand_dqc1_k2():
    for a in GRID:
        assert hildebrand_ppt_from_spectrum(dqc1_spectrum(4, a), 2, 5).holds == (a >= 0.75)


def test_hildebrand_errors():
    with pytest.raises(UsageError):
        hildebrand_ppt_from_spectrum(np.full(8, 1 / 8), 2, 3)
    with pytest.raises(UsageError, match="too large"):
        hildebrand_ppt_from_spectrum(np.full(2**10, 2.0**-10), 5, 10)


def test_degenerate_condition_examples():
    for m in range(1, 6):
        assert degenerate_ppt_condition(DegeneratePair(0.1, 0.1), m).holds
        assert not degenerate_ppt_condition(DegeneratePair(0.1, 0.0), m).holds
    with pytest.raises(InvalidSpectrumError):
        DegeneratePair(0.1, 0.2)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_degenerate_condition_dqc1(m):
    n = 2 * m
    for a in GRID:
        pair = degenerate_pair_from_spectrum(dqc1_spectrum(n, a), m)
        assert degenerate_ppt_condition(pair, m).holds == (a >= dqc1_alpha_threshold(m))


def test_degenerate_membership():
    with pytest.raises(InvalidSpectrumError, match="degeneracies"):
        degenerate_pair_from_spectrum(np.sort(np.arange(1, 17) / 136)[::-1], 1)
    # n = 3, m = 2 needs 6 top and 10 bottom copies, but only 8 + 8 exist
    with pytest.raises(InvalidSpectrumError):
        degenerate_pair_from_spectrum(dqc1_spectrum(3, 0.5), 2)


def test_thresholds():
    assert [dqc1_alpha_threshold(k) for k in (1, 2, 3)] == [0.5, 0.75, 0.875]
    assert dqc1_all_cuts_bounds(2) == (0.5, 0.5)
    assert dqc1_all_cuts_bounds(4) == (0.75, 0.75)
    assert dqc1_all_cuts_bounds(5) == (0.75, 0.875)
    assert all(dqc1_alpha_threshold(k) < dqc1_alpha_threshold(k + 1) for k in range(1, 20))
    for n in range(2, 30):
        nec, suf = dqc1_all_cuts_bounds(n)
        assert nec <= suf
        assert (nec == suf) == (n % 2 == 0)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.floats(0, 1))
def test_three_routes_agree_on_dqc1(k, alpha):
    n = 2 * k
    lam = dqc1_spectrum(n, alpha)
    closed = alpha >= dqc1_alpha_threshold(k)
    degen = degenerate_ppt_condition(degenerate_pair_from_spectrum(lam, k), k).holds
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrderingSaturationWarning)
        hild = hildebrand_ppt_from_spectrum(lam, k, n + 1).holds
    # the 1e-12 slack may flip a verdict only within a hair of the threshold
    if abs(alpha - dqc1_alpha_threshold(k)) > 1e-9:
        assert closed == degen == hild
