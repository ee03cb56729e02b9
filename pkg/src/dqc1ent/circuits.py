"""Gates, DQC1 circuits, and trace estimation.

Circuit files are line oriented::

    # comment
    H 0
    CNOT 0 2
    R 1 2 0.785398      # R_theta on qubits 1, 2
    CP 0 1 1.570796     # controlled phase diag(1, 1, 1, e^{i phi})

Supported gate names: ``H X Y Z S T CNOT CZ R CP``. Names are case
insensitive; everything after ``#`` is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import UsageError
from .states import dqc1_state
from .tensor import apply_gate, check_register, num_qubits

Axis = Literal["x", "y"]

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
S = np.diag([1, 1j]).astype(complex)
T = np.diag([1, np.exp(1j * math.pi / 4)]).astype(complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)

PAULI = {"x": X, "y": Y}


def r_theta(theta: float) -> np.ndarray:
    """Two-qubit rotation by ``theta`` in the ``(|01>, |10>)`` plane, identity on ``|00>, |11>``."""
    c, s = math.cos(theta), math.sin(theta)
    u = np.eye(4, dtype=complex)
    u[1, 1] = c
    u[2, 1] = s
    u[1, 2] = -s
    u[2, 2] = c
    return u


def controlled_phase(phi: float) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(1j * phi)]).astype(complex)


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def haar_random_unitary(qubits: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary on ``qubits`` qubits, reproducible from ``seed``.

    QR decomposition of a complex Ginibre matrix, with the phases of
    ``diag(R)`` absorbed into ``Q`` so the distribution is exactly Haar.
    """
    check_register(qubits)
    rng = np.random.default_rng(seed)
    d = 2**qubits
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def cdqc1_unitary(v: np.ndarray) -> np.ndarray:
    """``[|0><0| (x) 1 + |1><1| (x) V] H_1`` on ``n + 1`` qubits."""
    v = np.asarray(v, dtype=complex)
    n = num_qubits(v.shape[0])
    check_register(n + 1)
    d = 2**n
    cv = np.zeros((2 * d, 2 * d), dtype=complex)
    cv[:d, :d] = np.eye(d)
    cv[d:, d:] = v
    return cv @ _h_first(n + 1)


def _h_first(qubits: int) -> np.ndarray:
    d = 2 ** (qubits - 1)
    h = np.empty((2 * d, 2 * d), dtype=complex)
    eye = np.eye(d) / math.sqrt(2)
    h[:d, :d] = eye
    h[:d, d:] = eye
    h[d:, :d] = eye
    h[d:, d:] = -eye
    return h


def _first_qubit_pauli_expectation(rho: np.ndarray, axis: Axis) -> float:
    """``tr[rho (sigma_axis (x) 1)]`` using only the off-diagonal block of ``rho``."""
    d = rho.shape[0] // 2
    off = np.trace(rho[:d, d:])  # sum of <0,b| rho |1,b>
    if axis == "x":
        return float(2.0 * off.real)
    if axis == "y":
        # tr(rho sigma_y) = i<0|rho|1> - i<1|rho|0> = -2 Im <0|rho|1>
        return float(-2.0 * off.imag)
    raise UsageError(f"axis must be 'x' or 'y', got {axis!r}")


def output_state(u: np.ndarray, alpha: float) -> np.ndarray:
    """``U rho^alpha_n U^dagger`` for a unitary on ``n + 1`` qubits."""
    u = np.asarray(u, dtype=complex)
    n = num_qubits(u.shape[0]) - 1
    rho = dqc1_state(n, alpha)
    return u @ rho @ u.conj().T


def dqc1_expectation(u: np.ndarray, alpha: float, axis: Axis) -> float:
    """Exact DQC1 output ``tr[U rho^alpha_n U^dagger (sigma_axis (x) 1_n)]``."""
    return _first_qubit_pauli_expectation(output_state(u, alpha), axis)


@dataclass(frozen=True)
class ShotEstimate:
    mean: float
    stderr: float
    shots: int


def sample_dqc1(u: np.ndarray, alpha: float, axis: Axis, shots: int, seed) -> ShotEstimate:
    """Shot-sampled estimate of :func:`dqc1_expectation`.

    Each shot is a +/-1 outcome drawn from the Born distribution of
    ``sigma_axis`` on qubit 0. The standard error is the sample standard
    deviation (``ddof=1``) over ``sqrt(shots)``.
    """
    if shots < 1:
        raise UsageError("shots must be >= 1")
    exact = dqc1_expectation(u, alpha, axis)
    p_plus = min(1.0, max(0.0, 0.5 * (1.0 + exact)))
    rng = np.random.default_rng(seed)
    k = int(rng.binomial(shots, p_plus))
    mean = (2 * k - shots) / shots
    if shots > 1:
        var = (shots / (shots - 1)) * (1.0 - mean * mean)
        stderr = math.sqrt(max(var, 0.0) / shots)
    else:
        stderr = 0.0
    return ShotEstimate(mean, stderr, shots)


@lru_cache(maxsize=None)
def y_axis_sign() -> int:
    """Sign relating ``<sigma_y>`` on the clean qubit to ``Im tr V``.

    Calibrated once by exact evaluation on ``V = diag(1, i)``, whose
    normalized trace has imaginary part ``+1/2``.
    """
    v = np.diag([1, 1j]).astype(complex)
    ey = dqc1_expectation(cdqc1_unitary(v), 0.0, "y")
    return 1 if ey > 0 else -1


@dataclass(frozen=True)
class TraceEstimate:
    value: complex
    stderr_re: float
    stderr_im: float
    shots: int


def normalized_trace_estimate(v: np.ndarray, alpha: float, shots: int, seed) -> TraceEstimate:
    """Estimate ``tr(V) / 2**n`` from x- and y-axis DQC1 runs, rescaled by ``1/(1-alpha)``."""
    if alpha >= 1.0:
        raise UsageError("no signal: clean-qubit polarization is zero")
    u = cdqc1_unitary(v)
    sx, sy = np.random.SeedSequence(seed).spawn(2)
    ex = sample_dqc1(u, alpha, "x", shots, sx)
    ey = sample_dqc1(u, alpha, "y", shots, sy)
    scale = 1.0 / (1.0 - alpha)
    sign = y_axis_sign()
    return TraceEstimate(
        complex(ex.mean * scale, sign * ey.mean * scale),
        ex.stderr * scale,
        ey.stderr * scale,
        shots,
    )


# --- circuit files ---------------------------------------------------------

_FIXED = {"H": H, "X": X, "Y": Y, "Z": Z, "S": S, "T": T, "CNOT": CNOT, "CX": CNOT, "CZ": CZ}
_ARITY = {"H": 1, "X": 1, "Y": 1, "Z": 1, "S": 1, "T": 1, "CNOT": 2, "CX": 2, "CZ": 2, "R": 2, "CP": 2}


@dataclass(frozen=True)
class Gate:
    name: str
    targets: tuple[int, ...]
    param: float | None = None
    matrix: np.ndarray | None = None

    def unitary(self) -> np.ndarray:
        if self.matrix is not None:
            return self.matrix
        if self.name == "R":
            return r_theta(self.param)
        if self.name == "CP":
            return controlled_phase(self.param)
        return _FIXED[self.name]


class CircuitParseError(UsageError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_circuit(text: str) -> list[Gate]:
    gates = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        name = parts[0].upper()
        if name not in _ARITY:
            raise CircuitParseError(line_no, f"unknown gate {parts[0]!r}")
        arity = _ARITY[name]
        needs_param = name in ("R", "CP")
        expected = 1 + arity + (1 if needs_param else 0)
        if len(parts) != expected:
            raise CircuitParseError(line_no, f"{name} takes {arity} qubit(s){' and an angle' if needs_param else ''}")
        try:
            targets = tuple(int(p) for p in parts[1 : 1 + arity])
        except ValueError:
            raise CircuitParseError(line_no, "qubit indices must be integers") from None
        if any(t < 0 for t in targets) or len(set(targets)) != len(targets):
            raise CircuitParseError(line_no, f"bad qubit indices {targets}")
        param = None
        if needs_param:
            try:
                param = float(parts[-1])
            except ValueError:
                raise CircuitParseError(line_no, f"bad angle {parts[-1]!r}") from None
        gates.append(Gate(name, targets, param))
    return gates


def load_circuit(path: str | Path) -> list[Gate]:
    return parse_circuit(Path(path).read_text())


def circuit_qubits(gates: Iterable[Gate]) -> int:
    return max((max(g.targets) + 1 for g in gates), default=0)


def circuit_unitary(gates: Sequence[Gate], qubits: int) -> np.ndarray:
    """Product of the gates (first gate applied first) on a ``qubits`` register."""
    check_register(qubits)
    need = circuit_qubits(gates)
    if need > qubits:
        raise UsageError(f"circuit touches qubit {need - 1} but register has {qubits} qubits")
    u = np.eye(2**qubits, dtype=complex)
    for g in gates:
        u = apply_gate(g.unitary(), g.targets, u)
    return u
