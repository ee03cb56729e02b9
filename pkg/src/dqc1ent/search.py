"""Randomized search for unitaries that make a state non-PPT across a cut.

The objective is the smallest partial-transpose eigenvalue, which stays
informative while the state is still PPT (negativity is flat zero there).
A find is a certificate of entanglement; a miss certifies nothing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .bipartite import Bipartition, negativity, pt_spectrum
from .circuits import haar_random_unitary
from .errors import UsageError
from .states import dqc1_state
from .tensor import apply_gate, check_register, num_qubits

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchResult:
    unitary: np.ndarray
    negativity: float
    min_eigenvalue: float
    evaluations: int


def _conjugate_local(gate: np.ndarray, targets, rho: np.ndarray) -> np.ndarray:
    x = apply_gate(gate, targets, rho)
    return apply_gate(gate, targets, x.conj().T).conj().T


def _random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (a + a.conj().T) / 2
    return h / np.linalg.norm(h, 2)


def _givens(dim: int, i: int, j: int, angle: float, phase: float) -> np.ndarray:
    g = np.eye(dim, dtype=complex)
    c, s = np.cos(angle), np.sin(angle)
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -s * np.exp(-1j * phase)
    g[j, i] = s * np.exp(1j * phase)
    return g


def _propose(q: int, step: float, rng: np.random.Generator):
    """A random perturbation: returns ``(gate, targets)`` or ``(full_matrix, None)``."""
    if rng.random() < 0.5:
        pair = [int(t) for t in rng.choice(q, size=2, replace=False)]
        return expm(1j * step * _random_hermitian(4, rng)), pair
    d = 2**q
    i, j = (int(t) for t in rng.choice(d, size=2, replace=False))
    return _givens(d, i, j, step * rng.standard_normal(), rng.uniform(0, 2 * np.pi)), None


def search_entangling_unitary_for_state(
    rho: np.ndarray,
    bp: Bipartition,
    budget: int,
    seed: int,
    restarts: int | None = None,
) -> SearchResult:
    """Look for ``U`` making ``U rho U^dagger`` non-PPT across ``bp``.

    Random restarts (identity plus Haar unitaries) followed by greedy
    refinement with local moves: near-identity two-qubit unitaries and
    two-level Givens rotations in the full space. A move is kept only if
    it lowers the smallest partial-transpose eigenvalue; the step halves
    after a run of rejections. ``budget`` counts objective evaluations.
    """
    if budget < 1:
        raise UsageError("budget must be >= 1")
    rho = np.asarray(rho, dtype=complex)
    q = num_qubits(rho.shape[0])
    check_register(q)
    rng = np.random.default_rng(seed)
    if restarts is None:
        restarts = max(1, min(8, budget // 250))
    per_restart = budget // restarts
    evals = 0
    best_u, best_score = np.eye(2**q, dtype=complex), np.inf
    for r in range(restarts):
        if evals >= budget:
            break
        u = np.eye(2**q, dtype=complex) if r == 0 else haar_random_unitary(q, rng)
        state = u @ rho @ u.conj().T
        score = pt_spectrum(state, bp)[0]
        evals += 1
        stop = min(budget, evals + per_restart - 1) if r < restarts - 1 else budget
        step, fails = 0.5, 0
        while evals < stop:
            gate, targets = _propose(q, step, rng)
            if targets is None:
                cand = gate @ state @ gate.conj().T
            else:
                cand = _conjugate_local(gate, targets, state)
            cand_score = pt_spectrum(cand, bp)[0]
            evals += 1
            if cand_score < score:
                state, score = cand, cand_score
                u = gate @ u if targets is None else apply_gate(gate, targets, u)
                fails = 0
            else:
                fails += 1
                if fails >= 25:
                    step = step / 2 if step > 1e-3 else 0.5
                    fails = 0
        log.debug("restart %d: min PT eigenvalue %.3e", r, score)
        if score < best_score:
            best_u, best_score = u, score
    state = best_u @ rho @ best_u.conj().T
    return SearchResult(best_u, negativity(state, bp), float(best_score), evals)


def search_entangling_unitary(n: int, alpha: float, bp: Bipartition, budget: int, seed: int) -> SearchResult:
    """:func:`search_entangling_unitary_for_state` on the DQC1 input state ``rho^alpha_n``."""
    if bp.total_qubits != n + 1:
        raise UsageError(f"bipartition is on {bp.total_qubits} qubits, expected {n + 1}")
    return search_entangling_unitary_for_state(dqc1_state(n, alpha), bp, budget, seed)
