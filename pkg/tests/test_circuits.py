import math

import numpy as np
import pytest

from dqc1ent.circuits import (
    CircuitParseError,
    Gate,
    H,
    T,
    Z,
    cdqc1_unitary,
    circuit_unitary,
    dqc1_expectation,
    haar_random_unitary,
    is_unitary,
    normalized_trace_estimate,
    output_state,
    parse_circuit,
    r_theta,
    sample_dqc1,
    y_axis_sign,
)
from dqc1ent.errors import UsageError
from dqc1ent.states import dqc1_state
from dqc1ent.tensor import embed, partial_trace, trace_norm

from conftest import basis_ket


def direct_expectation(u, alpha, pauli):
    """Dense oracle: tr[U rho U^dagger (sigma (x) 1)] with sigma embedded by kron."""
    n = int(math.log2(u.shape[0])) - 1
    rho = dqc1_state(n, alpha)
    return np.trace(u @ rho @ u.conj().T @ np.kron(pauli, np.eye(2**n))).real


SX = np.array([[0, 1], [1, 0]])
SY = np.array([[0, -1j], [1j, 0]])


def test_r_theta():
    np.testing.assert_array_equal(r_theta(0), np.eye(4))
    np.testing.assert_allclose(r_theta(np.pi / 2) @ basis_ket(1, 2), basis_ket(2, 2), atol=1e-15)
    np.testing.assert_allclose(r_theta(np.pi / 4) @ basis_ket(1, 2), (basis_ket(1, 2) + basis_ket(2, 2)) / np.sqrt(2))
    th = 0.3
    np.testing.assert_allclose(r_theta(th) @ basis_ket(2, 2), -np.sin(th) * basis_ket(1, 2) + np.cos(th) * basis_ket(2, 2))
    np.testing.assert_array_equal(r_theta(th) @ basis_ket(0, 2), basis_ket(0, 2))
    np.testing.assert_array_equal(r_theta(th) @ basis_ket(3, 2), basis_ket(3, 2))


def test_r_theta_continuity():
    for eps in [1e-1, 1e-2, 1e-3]:
        for th in np.linspace(0, eps / 4, 5):
            assert trace_norm(r_theta(th) - np.eye(4)) <= eps


def test_haar_unitary():
    u = haar_random_unitary(3, 7)
    np.testing.assert_array_equal(u, haar_random_unitary(3, 7))
    assert not np.allclose(u, haar_random_unitary(3, 8))
    assert is_unitary(u)
    np.testing.assert_allclose(np.linalg.norm(u, axis=0), 1, atol=1e-12)


def test_haar_first_moment(rng):
    # E|U_00|^2 = 1/d under Haar measure; check to a loose statistical bound
    vals = [abs(haar_random_unitary(2, rng)[0, 0]) ** 2 for _ in range(4000)]
    assert np.mean(vals) == pytest.approx(0.25, abs=0.02)


def test_cdqc1_examples():
    for n in (1, 2, 3):
        u = cdqc1_unitary(np.eye(2**n))
        assert direct_expectation(u, 0, SX) == pytest.approx(1.0)
        assert dqc1_expectation(u, 0, "x") == pytest.approx(1.0)
    u = cdqc1_unitary(Z)
    assert dqc1_expectation(u, 0, "x") == pytest.approx(0.0, abs=1e-15)
    v = haar_random_unitary(3, 1)
    assert is_unitary(cdqc1_unitary(v))


def test_cdqc1_block_form():
    v = haar_random_unitary(2, 3)
    u = cdqc1_unitary(v)
    cv = np.block([[np.eye(4), np.zeros((4, 4))], [np.zeros((4, 4)), v]])
    np.testing.assert_allclose(u, cv @ embed(H, [0], 3), atol=1e-14)


def test_expectation_identity_circuit():
    u = np.eye(8)
    for axis in "xy":
        assert dqc1_expectation(u, 0.2, axis) == 0


@pytest.mark.parametrize("seed", range(5))
def test_expectation_matches_dense_oracle_and_scaling(seed):
    u = haar_random_unitary(3, seed)
    base = {ax: dqc1_expectation(u, 0.0, ax) for ax in "xy"}
    for alpha in (0.0, 0.4, 0.9):
        assert dqc1_expectation(u, alpha, "x") == pytest.approx(direct_expectation(u, alpha, SX), abs=1e-12)
        assert dqc1_expectation(u, alpha, "y") == pytest.approx(direct_expectation(u, alpha, SY), abs=1e-12)
        for ax in "xy":
            assert dqc1_expectation(u, alpha, ax) == pytest.approx((1 - alpha) * base[ax], abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_cdqc1_reads_normalized_trace(n):
    for seed in range(20):
        v = haar_random_unitary(n, 100 * n + seed)
        t = np.trace(v) / 2**n
        u = cdqc1_unitary(v)
        assert dqc1_expectation(u, 0, "x") == pytest.approx(t.real, abs=1e-10)
        assert dqc1_expectation(u, 0, "y") == pytest.approx(y_axis_sign() * t.imag, abs=1e-10)


def test_y_axis_calibration_against_dense_oracle():
    v = np.diag([1, 1j])
    ey = direct_expectation(cdqc1_unitary(v), 0.0, SY)
    assert ey == pytest.approx(0.5)
    assert y_axis_sign() == 1


@pytest.mark.parametrize("seed", [0, 1])
def test_cdqc1_leaves_register_maximally_mixed(seed):
    n = 3
    u = cdqc1_unitary(haar_random_unitary(n, seed))
    for alpha in (0.0, 0.5):
        rho = output_state(u, alpha)
        np.testing.assert_allclose(partial_trace(rho, [1, 2, 3]), np.eye(8) / 8, atol=1e-12)


def test_sampling_deterministic_cases():
    u = cdqc1_unitary(np.eye(2))
    est = sample_dqc1(u, 0.0, "x", 1000, 0)
    assert est.mean == 1.0 and est.stderr == 0.0
    with pytest.raises(UsageError):
        sample_dqc1(u, 0.0, "x", 0, 0)


def test_sampling_consistency_over_seeds():
    u = cdqc1_unitary(haar_random_unitary(2, 11))
    exact = dqc1_expectation(u, 0.2, "x")
    hits = 0
    for seed in range(100):
        est = sample_dqc1(u, 0.2, "x", 20_000, seed)
        hits += abs(est.mean - exact) <= 5 * est.stderr
    assert hits >= 99


def test_sampling_fully_mixed():
    u = haar_random_unitary(3, 4)
    est = sample_dqc1(u, 1.0, "y", 50_000, 3)
    assert abs(est.mean) <= 5 * est.stderr


def test_sampling_reproducible():
    u = haar_random_unitary(2, 4)
    assert sample_dqc1(u, 0.1, "x", 1000, 9) == sample_dqc1(u, 0.1, "x", 1000, 9)


@pytest.mark.parametrize(
    "v, exact",
    [
        (np.eye(4), 1.0),
        (Z, 0.0),
        (np.diag([1, 1j]), (1 + 1j) / 2),
        (T, (1 + np.exp(1j * np.pi / 4)) / 2),
    ],
)
def test_normalized_trace_estimate(v, exact):
    # oracle: exact matrix trace
    assert np.trace(v) / v.shape[0] == pytest.approx(exact)
    est = normalized_trace_estimate(v, 0.3, 200_000, 5)
    assert abs(est.value.real - exact.real) <= 5 * est.stderr_re + 1e-12
    assert abs(est.value.imag - np.imag(exact)) <= 5 * est.stderr_im + 1e-12


def test_normalized_trace_no_signal():
    with pytest.raises(UsageError, match="no signal"):
        normalized_trace_estimate(np.eye(2), 1.0, 10, 0)


def test_parse_circuit():
    text = """
    # a comment
    H 0
    cnot 0 1   # trailing comment
    R 1 2 0.5
    CP 0 2 1.25
    """
    gates = parse_circuit(text)
    assert [g.name for g in gates] == ["H", "CNOT", "R", "CP"]
    assert gates[2].targets == (1, 2) and gates[2].param == 0.5
    u = circuit_unitary(gates, 3)
    assert is_unitary(u)


@pytest.mark.parametrize(
    "text, line",
    [("H 0\nFOO 1", 2), ("CNOT 0", 1), ("H 0\n\nR 0 1", 3), ("H x", 1), ("CZ 1 1", 1), ("R 0 1 abc", 1)],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(CircuitParseError) as exc:
        parse_circuit(text)
    assert exc.value.line_no == line
    assert f"line {line}" in str(exc.value)


def test_circuit_unitary_gate_order():
    gates = [Gate("X", (0,)), Gate("H", (0,))]
    np.testing.assert_allclose(circuit_unitary(gates, 1), H @ np.array([[0, 1], [1, 0]]))
    with pytest.raises(UsageError):
        circuit_unitary([Gate("CNOT", (0, 3))], 2)
