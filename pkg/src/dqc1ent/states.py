"""Named states of the one-clean-qubit model.

All constructors return dense complex ``numpy`` arrays. Qubit 0 is the
clean qubit and the most significant bit of the basis index.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericValidationError, UsageError
from .tensor import EPS_EIG, EPS_HERM, check_register, is_hermitian, num_qubits


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise UsageError(f"invalid mixing parameter: alpha={alpha} not in [0, 1]")
    return alpha


def check_density_matrix(rho: np.ndarray, tol: float = EPS_EIG) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return ``rho`` as an array."""
    rho = np.asarray(rho, dtype=complex)
    num_qubits(rho.shape[0])
    if not is_hermitian(rho, EPS_HERM):
        raise NumericValidationError("not a density matrix: not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise NumericValidationError(f"not a density matrix: trace {tr:.12g}")
    lmin = np.linalg.eigvalsh(rho)[0]
    if lmin < -tol:
        raise NumericValidationError(f"not a density matrix: eigenvalue {lmin:.3e}")
    return rho


def maximally_mixed(qubits: int) -> np.ndarray:
    check_register(qubits)
    d = 2**qubits
    return np.eye(d, dtype=complex) / d


def dqc1_spectrum(n: int, alpha: float) -> np.ndarray:
    """Sorted spectrum of the DQC1 input state on ``n + 1`` qubits.

    ``(2 - alpha) / 2**(n+1)`` repeated ``2**n`` times followed by
    ``alpha / 2**(n+1)`` repeated ``2**n`` times. No matrix is built, so
    this works beyond the dense register limit.
    """
    alpha = _check_alpha(alpha)
    if n < 1:
        raise UsageError("n must be at least 1")
    d = 2 ** (n + 1)
    half = 2**n
    return np.concatenate([np.full(half, (2.0 - alpha) / d), np.full(half, alpha / d)])


def dqc1_state(n: int, alpha: float) -> np.ndarray:
    """Input state ``(1-alpha)/2**n |0><0| (x) 1_n + alpha/2**(n+1) 1_{n+1}``."""
    alpha = _check_alpha(alpha)
    if n < 1:
        raise UsageError("n must be at least 1")
    check_register(n + 1)
    return np.diag(dqc1_spectrum(n, alpha)).astype(complex)


def tau_state(n: int) -> np.ndarray:
    """Diagonal state uniform on every basis state except ``|0...0>`` and ``|1...1>``."""
    if n < 1:
        raise UsageError("n must be at least 1")
    check_register(n + 1)
    d = 2 ** (n + 1)
    diag = np.full(d, 1.0 / (d - 2))
    diag[0] = diag[-1] = 0.0
    return np.diag(diag).astype(complex)


def depolarize(rho: np.ndarray, alpha: float) -> np.ndarray:
    alpha = _check_alpha(alpha)
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    return (1.0 - alpha) * rho + alpha * np.eye(d) / d


def pure(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    vec = vec / np.linalg.norm(vec)
    return np.outer(vec, vec.conj())


def basis_vector(index: int, qubits: int) -> np.ndarray:
    v = np.zeros(2**qubits, dtype=complex)
    v[index] = 1.0
    return v


def bell_state() -> np.ndarray:
    """``|Phi+><Phi+|`` on two qubits."""
    return pure(np.array([1, 0, 0, 1]))


def random_density_matrix(qubits: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed random state (Hilbert-Schmidt measure for full rank)."""
    d = 2**qubits
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
