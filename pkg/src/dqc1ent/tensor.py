"""Dense complex matrix helpers for qubit registers.

Qubit 0 is the most significant bit of a basis index, so a register of
``q`` qubits reshaped to ``(2,) * q`` has qubit ``i`` on axis ``i``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NotHermitianError, RegisterTooLarge, UsageError

EPS_HERM = 1e-10
EPS_EIG = 1e-9

#: Largest register handled by default (dim 2048). Callers may raise it.
MAX_QUBITS = 11


def max_dim() -> int:
    return 2**MAX_QUBITS


def num_qubits(dim: int) -> int:
    """Number of qubits for a ``dim``-dimensional register; rejects non powers of two."""
    q = int(dim).bit_length() - 1
    if dim < 1 or 2**q != dim:
        raise UsageError(f"dimension {dim} is not a power of two")
    return q


def check_register(qubits: int) -> None:
    if qubits > MAX_QUBITS:
        raise RegisterTooLarge(qubits, MAX_QUBITS)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim():
        raise RegisterTooLarge(int(np.log2(max(rows, cols))), MAX_QUBITS)
    return np.kron(a, b)


def is_hermitian(h: np.ndarray, tol: float = EPS_HERM) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= tol)


def _require_hermitian(h: np.ndarray, tol: float) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"not Hermitian: matrix of shape {h.shape} is not square")
    dev = float(np.max(np.abs(h - h.conj().T), initial=0.0))
    if dev > tol:
        raise NotHermitianError(f"not Hermitian: max |h - h^dagger| = {dev:.3e} > {tol:.1e}")
    return h


def hermitian_spectrum(h: np.ndarray, tol: float = EPS_HERM) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix sorted in non-increasing order.

    Parameters
    ----------
    h : np.ndarray
        Square matrix, Hermitian up to ``tol`` in the max-entry norm.
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    np.ndarray
        Real eigenvalues, largest first.

    Raises
    ------
    NotHermitianError
        If ``h`` deviates from its adjoint by more than ``tol``.
    """
    h = _require_hermitian(h, tol)
    return np.linalg.eigvalsh(h)[::-1].copy()


def hermitian_eigh(h: np.ndarray, tol: float = EPS_HERM) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`hermitian_spectrum` but also returns eigenvectors (as columns, same order)."""
    h = _require_hermitian(h, tol)
    vals, vecs = np.linalg.eigh(h)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def trace_norm(a: np.ndarray) -> float:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError("trace_norm expects a square matrix")
    if np.allclose(a, a.conj().T, atol=0, rtol=0):
        return float(np.sum(np.abs(np.linalg.eigvalsh(a))))
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def _check_targets(gate: np.ndarray, targets: Sequence[int], total_qubits: int) -> list[int]:
    targets = [int(t) for t in targets]
    if len(set(targets)) != len(targets):
        raise UsageError(f"gate/target mismatch: repeated target in {targets}")
    if any(t < 0 or t >= total_qubits for t in targets):
        raise UsageError(f"gate/target mismatch: targets {targets} outside register of {total_qubits} qubits")
    if gate.shape != (2 ** len(targets), 2 ** len(targets)):
        raise UsageError(f"gate/target mismatch: gate of shape {gate.shape} on {len(targets)} targets")
    return targets


def apply_gate(gate: np.ndarray, targets: Sequence[int], matrix: np.ndarray) -> np.ndarray:
    """Left-multiply ``matrix`` by ``gate`` acting on ``targets``, identity elsewhere.

    ``matrix`` may be a state vector (1-d) or an operator (2-d) on the
    full register. The embedded gate is never materialised; the gate is
    contracted against the target axes of the reshaped register.
    """
    gate = np.asarray(gate)
    matrix = np.asarray(matrix)
    dim = matrix.shape[0]
    q = num_qubits(dim)
    targets = _check_targets(gate, targets, q)
    k = len(targets)
    trailing = matrix.shape[1:]
    t = matrix.reshape((2,) * q + trailing)
    g = gate.reshape((2,) * (2 * k))
    # contract gate input axes with target axes; result has gate output axes first
    out = np.tensordot(g, t, axes=(list(range(k, 2 * k)), targets))
    rest = [ax for ax in range(q) if ax not in targets]
    order = np.empty(q, dtype=int)
    order[targets] = np.arange(k)
    order[rest] = np.arange(k, q)
    perm = list(order) + list(range(q, q + len(trailing)))
    return np.transpose(out, perm).reshape(matrix.shape)


def embed(gate: np.ndarray, targets: Sequence[int], total_qubits: int) -> np.ndarray:
    """Full ``2**total_qubits`` operator acting as ``gate`` on ``targets``.

    Targets are listed in the order of the gate's own tensor factors, so
    ``embed(cnot, [2, 0], 3)`` uses qubit 2 as control.
    """
    check_register(total_qubits)
    gate = np.asarray(gate, dtype=complex)
    _check_targets(gate, targets, total_qubits)
    return apply_gate(gate, targets, np.eye(2**total_qubits, dtype=complex))


def conjugate(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """``u @ rho @ u^dagger``."""
    return u @ rho @ u.conj().T


def partial_trace(rho: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Reduced operator on the qubits in ``keep`` (kept in ascending order)."""
    rho = np.asarray(rho)
    q = num_qubits(rho.shape[0])
    keep = sorted(int(k) for k in keep)
    drop = [i for i in range(q) if i not in keep]
    t = rho.reshape((2,) * (2 * q))
    t = np.transpose(t, keep + drop + [q + i for i in keep] + [q + i for i in drop])
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    t = t.reshape(dk, dd, dk, dd)
    return np.einsum("ajbj->ab", t)
