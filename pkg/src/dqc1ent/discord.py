"""Zero-discord (classical-quantum) tests for a measured party.

A state is zero discord for measurements on party A when some orthonormal
basis ``{|l>}`` of A brings it to ``sum_l a_l |l><l| (x) rho_l``. Writing
``rho = sum_{b,b'} M_{bb'} (x) |b><b'|`` with ``M_{bb'}`` acting on A,
that happens iff all ``M_{bb'}`` are diagonal in one basis. The family is
closed under adjoints (``M_{b'b} = M_{bb'}^dagger``), so this is the same
as its Hermitian parts pairwise commuting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import minimize

from .bipartite import Bipartition
from .states import depolarize
from .tensor import num_qubits


@dataclass(frozen=True)
class BlockDecomposition:
    """``blocks[i, j]`` is the party-B operator ``(<i| (x) 1) rho (|j> (x) 1)``."""

    party_a_dim: int
    blocks: np.ndarray  # shape (dA, dA, dB, dB)

    def reassemble(self) -> np.ndarray:
        da, _, db, _ = self.blocks.shape
        return np.transpose(self.blocks, (0, 2, 1, 3)).reshape(da * db, da * db)


def _regroup(rho: np.ndarray, bp: Bipartition) -> np.ndarray:
    """``rho`` as a ``(dA, dB, dA, dB)`` tensor with party A's qubits first."""
    rho = np.asarray(rho)
    q = num_qubits(rho.shape[0])
    order = list(bp.party_a) + list(bp.party_b)
    t = rho.reshape((2,) * (2 * q)).transpose(order + [q + i for i in order])
    da, db = 2 ** len(bp.party_a), 2 ** len(bp.party_b)
    return t.reshape(da, db, da, db)


def blocks(rho: np.ndarray, bp: Bipartition) -> BlockDecomposition:
    t = _regroup(rho, bp)
    return BlockDecomposition(t.shape[0], np.transpose(t, (0, 2, 1, 3)).copy())


def _hermitian_family(rho: np.ndarray, bp: Bipartition) -> np.ndarray:
    """Weighted principal Hermitian components of the A-side coefficient family."""
    t = _regroup(rho, bp)
    da, db = t.shape[0], t.shape[1]
    m = np.transpose(t, (1, 3, 0, 2)).reshape(db * db, da, da)
    herm = np.concatenate([(m + m.conj().transpose(0, 2, 1)) / 2, (m - m.conj().transpose(0, 2, 1)) / 2j])
    _, s, wh = np.linalg.svd(herm.reshape(len(herm), -1), full_matrices=False)
    keep = s > 1e-15 * max(s[0], 1e-300)
    comps = (s[keep, None] * wh[keep]).reshape(-1, da, da)
    # components are complex combinations of Hermitian matrices; re-Hermitize
    return np.concatenate([(comps + comps.conj().transpose(0, 2, 1)) / 2, (comps - comps.conj().transpose(0, 2, 1)) / 2j])


def commutator_residual(rho: np.ndarray, bp: Bipartition) -> float:
    """Largest Frobenius norm of a commutator within the Hermitian A-side family."""
    fam = _hermitian_family(rho, bp)
    worst = 0.0
    for i in range(len(fam)):
        c = np.einsum("ab,kbc->kac", fam[i], fam[i + 1 :]) - np.einsum("kab,bc->kac", fam[i + 1 :], fam[i])
        if len(c):
            worst = max(worst, float(np.max(np.linalg.norm(c, axis=(1, 2)))))
    return worst


def offdiagonal_mass(rho: np.ndarray, bp: Bipartition, basis: np.ndarray) -> float:
    """Squared Frobenius norm of the blocks ``B_ij``, ``i != j``, after rotating party A into ``basis``.

    ``basis`` holds the new A basis vectors as columns.
    """
    t = _regroup(rho, bp)
    w = np.asarray(basis)
    rot = np.einsum("ai,abcd,cj->ijbd", w.conj(), t, w)
    off = ~np.eye(t.shape[0], dtype=bool)
    return float(np.sum(np.abs(rot[off]) ** 2))


@dataclass(frozen=True)
class DiscordResult:
    zero_discord: bool
    residual: float
    basis: np.ndarray

    def __bool__(self) -> bool:
        return self.zero_discord


def default_tol(dim: int) -> float:
    return 1e-8 * dim


def is_zero_discord(rho: np.ndarray, bp: Bipartition, tol: float | None = None, seed: int = 0) -> DiscordResult:
    """Zero-discord test for measurements on party A of ``bp``.

    Party A is taken as given (not canonicalised), so ``bp`` and its
    complement ask different questions. ``basis`` is a candidate
    measurement basis: eigenvectors of a random combination of the family,
    which diagonalise the whole family whenever it commutes.
    """
    rho = np.asarray(rho, dtype=complex)
    tol = default_tol(rho.shape[0]) if tol is None else tol
    fam = _hermitian_family(rho, bp)
    residual = commutator_residual(rho, bp)
    coeffs = np.random.default_rng(seed).standard_normal(len(fam))
    _, basis = np.linalg.eigh(np.tensordot(coeffs, fam, axes=1))
    return DiscordResult(residual <= tol, residual, basis)


def min_offdiagonal_mass(rho: np.ndarray, bp: Bipartition, restarts: int = 8, seed: int = 0) -> float:
    """Brute-force oracle: minimise off-diagonal block mass over party-A unitaries.

    Unitaries are ``exp(iH)`` with ``H`` parametrised by ``dA**2`` real
    numbers; Powell's method from several random starts. Only intended
    for small ``dA``.
    """
    from scipy.linalg import expm

    da = 2 ** len(bp.party_a)
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(da, 1)

    def unitary(x):
        h = np.diag(x[:da]).astype(complex)
        k = len(iu[0])
        h[iu] = x[da : da + k] + 1j * x[da + k :]
        h = h + np.triu(h, 1).conj().T
        return expm(1j * h)

    scale = np.sum(np.abs(np.asarray(rho)) ** 2)
    best = np.inf
    for _ in range(restarts):
        x0 = rng.uniform(-np.pi, np.pi, da * da)
        res = minimize(lambda x: offdiagonal_mass(rho, bp, unitary(x)) / scale, x0, method="Powell",
                       options={"xtol": 1e-10, "ftol": 1e-14, "maxfev": 20_000})
        best = min(best, res.fun * scale)
    return float(best)


def discord_depolarization_check(rho: np.ndarray, bp: Bipartition, alphas: Iterable[float], tol: float | None = None) -> bool:
    """True iff the zero-discord verdict is the same for every ``depolarize(rho, alpha)``."""
    verdicts = {is_zero_discord(depolarize(rho, a), bp, tol).zero_discord for a in alphas}
    return len(verdicts) <= 1
