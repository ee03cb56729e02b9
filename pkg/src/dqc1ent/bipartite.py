"""Qubit bipartitions and partial-transpose based entanglement checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

from .circuits import r_theta
from .errors import NumericValidationError, UsageError
from .states import dqc1_state
from .tensor import embed, num_qubits, trace_norm


@dataclass(frozen=True)
class Bipartition:
    """Split of a ``total_qubits`` register; ``party_a`` lists the qubits of party A.

    The bitmask puts qubit 0 on the most significant bit, matching the
    basis-index convention.
    """

    total_qubits: int
    party_a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(sorted(set(int(i) for i in self.party_a)))
        object.__setattr__(self, "party_a", a)
        if not a or len(a) >= self.total_qubits:
            raise UsageError(f"bipartition must be nontrivial, got party A = {a} of {self.total_qubits} qubits")
        if a[0] < 0 or a[-1] >= self.total_qubits:
            raise UsageError(f"qubit index out of range in {a}")

    @classmethod
    def parse(cls, text: str, total_qubits: int) -> "Bipartition":
        """Parse CLI syntax: comma separated party-A indices such as ``"0,2,3"``."""
        # the label form "0,2|1,3" is accepted too; only the A side matters
        try:
            qubits = [int(t) for t in text.split("|")[0].split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"cannot parse bipartition {text!r}") from None
        return cls(total_qubits, tuple(qubits))

    @property
    def party_b(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.total_qubits) if i not in self.party_a)

    @property
    def mask_a(self) -> int:
        q = self.total_qubits
        return sum(1 << (q - 1 - i) for i in self.party_a)

    @property
    def size(self) -> int:
        return len(self.party_a)

    def complement(self) -> "Bipartition":
        return Bipartition(self.total_qubits, self.party_b)

    def canonical(self) -> "Bipartition":
        a, b = self.party_a, self.party_b
        if len(a) < len(b) or (len(a) == len(b) and 0 in a):
            return self
        return self.complement()

    @property
    def cut_size(self) -> int:
        """Qubit count of the smaller party."""
        return min(len(self.party_a), self.total_qubits - len(self.party_a))

    def label(self) -> str:
        return ",".join(map(str, self.party_a)) + "|" + ",".join(map(str, self.party_b))

    def __str__(self) -> str:
        return self.label()


def enumerate_bipartitions(total_qubits: int, cut_sizes: Sequence[int] | None = None) -> list[Bipartition]:
    """All ``2**(total-1) - 1`` canonical bipartitions, ordered by cut size then lexicographically."""
    if total_qubits < 2:
        raise UsageError("need at least two qubits for a bipartition")
    out = []
    for k in range(1, total_qubits // 2 + 1):
        if cut_sizes is not None and k not in cut_sizes:
            continue
        for a in combinations(range(total_qubits), k):
            bp = Bipartition(total_qubits, a)
            if bp.canonical() == bp:
                out.append(bp)
    return out


def partial_transpose(rho: np.ndarray, bp: Bipartition) -> np.ndarray:
    """Transpose the party-A indices of ``rho``.

    Swaps the row and column axes of every party-A qubit in the
    ``(2,) * 2q`` view of the matrix.
    """
    rho = np.asarray(rho)
    q = num_qubits(rho.shape[0])
    if q != bp.total_qubits:
        raise UsageError(f"state has {q} qubits, bipartition expects {bp.total_qubits}")
    perm = list(range(2 * q))
    for i in bp.party_a:
        perm[i], perm[q + i] = q + i, i
    return np.transpose(rho.reshape((2,) * (2 * q)), perm).reshape(rho.shape).copy()


def default_tol(dim: int) -> float:
    return 1e-9 * dim


class PPTResult(NamedTuple):
    ppt: bool
    min_eigenvalue: float

    def __bool__(self) -> bool:
        return self.ppt


def pt_spectrum(rho: np.ndarray, bp: Bipartition) -> np.ndarray:
    pt = partial_transpose(rho, bp)
    return np.linalg.eigvalsh((pt + pt.conj().T) / 2)


def is_ppt(rho: np.ndarray, bp: Bipartition, tol: float | None = None) -> PPTResult:
    """PPT test; the margin is the smallest eigenvalue of the partial transpose."""
    tol = default_tol(rho.shape[0]) if tol is None else tol
    lmin = float(pt_spectrum(rho, bp)[0])
    return PPTResult(lmin >= -tol, lmin)


def negativity(rho: np.ndarray, bp: Bipartition) -> float:
    ev = pt_spectrum(rho, bp)
    return float(np.sum(np.abs(ev[ev < 0])))


def pt_witness(
    rho: np.ndarray,
    bp: Bipartition,
    phi: np.ndarray,
    psi: np.ndarray,
    tol: float | None = None,
) -> bool:
    """Two-vector certificate of a non-PPT state.

    True when ``<phi|PT|phi>`` vanishes while ``<psi|PT|phi>`` does not:
    a PSD operator with a zero diagonal entry must have the whole
    corresponding row zero.
    """
    tol = default_tol(rho.shape[0]) if tol is None else tol
    pt = partial_transpose(rho, bp)
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    v = pt @ phi
    return bool(abs(np.vdot(phi, v)) <= tol and abs(np.vdot(psi, v)) > tol)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """``||rho - sigma||_1`` (no factor 1/2)."""
    rho = np.asarray(rho)
    sigma = np.asarray(sigma)
    if rho.shape != sigma.shape:
        raise UsageError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    return trace_norm(rho - sigma)


@dataclass(frozen=True)
class OrbitCertificate:
    unitary: np.ndarray
    theta: float
    negativity: float
    distance: float
    pair: tuple[int, int]


def cross_cut_pair(bp: Bipartition) -> tuple[int, int]:
    """Lowest-index qubit of each party, clean qubit first."""
    a, b = bp.party_a[0], bp.party_b[0]
    return (a, b) if a == 0 else (b, a)


def boundary_orbit_demo(n: int, bp: Bipartition, epsilon: float, tol: float | None = None) -> OrbitCertificate:
    """Unitary within trace-norm distance ``epsilon`` of the identity that entangles ``rho^0_n`` across ``bp``.

    ``R_theta`` acts on the clean qubit and the lowest qubit of the other
    party; the remaining qubits stay maximally mixed. ``theta`` is solved
    so that ``||U - 1||_1 = epsilon / 2`` (capped at ``pi/4``).
    """
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    q = n + 1
    if bp.total_qubits != q:
        raise UsageError(f"bipartition is on {bp.total_qubits} qubits, expected {q}")
    pair = cross_cut_pair(bp)
    eye = np.eye(2**q)

    def dist(theta):
        return trace_norm(embed(r_theta(theta), list(pair), q) - eye)

    target = epsilon / 2
    if dist(math.pi / 4) <= target:
        theta = math.pi / 4
    else:
        theta = brentq(lambda t: dist(t) - target, 0.0, math.pi / 4, xtol=1e-15, rtol=1e-14)
    u = embed(r_theta(theta), list(pair), q)
    rho = u @ dqc1_state(n, 0.0) @ u.conj().T
    neg = negativity(rho, bp)
    tol = default_tol(2**q) if tol is None else tol
    if neg <= tol:
        raise NumericValidationError(f"epsilon below numeric resolution: negativity {neg:.3e} <= {tol:.1e}")
    return OrbitCertificate(u, theta, neg, dist(theta), pair)
