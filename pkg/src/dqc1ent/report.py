"""Parameter sweeps over DQC1 states and persistence of criterion records."""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import bipartite, discord, spectrum
from .bipartite import Bipartition, enumerate_bipartitions
from .circuits import Gate, cdqc1_unitary, circuit_unitary, haar_random_unitary, load_circuit
from .errors import InvalidSpectrumError, UsageError
from .states import dqc1_spectrum, dqc1_state

CRITERIA = ("ppt", "negativity", "johnston", "hildebrand", "degenerate", "discord", "witness")
DEFAULT_CRITERIA = ("ppt", "negativity", "johnston", "hildebrand", "degenerate", "discord")
ALL_CUTS_MAX_N = 8


@dataclass
class CriterionReport:
    run_id: str
    n: int
    alpha: float
    bipartition: str
    criterion: str
    verdict: bool
    margin: float
    seed: int
    wall_time_ms: int


FIELDS = [f.name for f in dataclasses.fields(CriterionReport)]


@dataclass
class SweepConfig:
    n_range: list[int]
    alpha_grid: list[float]
    cut_sizes: list[int] | None = None
    shots: int = 0
    seeds: list[int] = field(default_factory=lambda: [0])
    budget: int = 0
    output_path: str | None = None
    format: str = "csv"
    criteria: list[str] = field(default_factory=lambda: list(DEFAULT_CRITERIA))
    all_cuts: bool = False
    circuit: str | None = None
    cdqc1: bool = False
    haar_v: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.n_range or not self.alpha_grid or not self.seeds:
            raise UsageError("n_range, alpha_grid and seeds must be nonempty")
        if any(not 0.0 <= a <= 1.0 for a in self.alpha_grid):
            raise UsageError("alpha values must lie in [0, 1]")
        if any(n < 1 for n in self.n_range):
            raise UsageError("n must be >= 1")
        bad = set(self.criteria) - set(CRITERIA)
        if bad:
            raise UsageError(f"unknown criteria: {sorted(bad)}")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if self.all_cuts and max(self.n_range) > ALL_CUTS_MAX_N:
            raise UsageError(f"full bipartition enumeration limited to n <= {ALL_CUTS_MAX_N}")

    @classmethod
    def from_file(cls, path: str | Path, **overrides) -> "SweepConfig":
        import yaml

        data = yaml.safe_load(Path(path).read_text()) or {}
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def run_id(self) -> str:
        ident = {k: v for k, v in dataclasses.asdict(self).items() if k not in ("output_path", "format", "workers")}
        if self.circuit:
            ident["circuit_text"] = Path(self.circuit).read_text()
        return hashlib.sha256(json.dumps(ident, sort_keys=True).encode()).hexdigest()[:12]


def scan_bipartitions(total: int, cut_sizes: Sequence[int] | None, all_cuts: bool) -> list[Bipartition]:
    """Bipartitions for one scan point.

    Default: one representative per cut size (party A = the first ``k``
    qubits, which contains the clean qubit). ``all_cuts`` enumerates every
    canonical bipartition of the requested sizes.
    """
    sizes = list(cut_sizes) if cut_sizes else list(range(1, total // 2 + 1))
    sizes = [k for k in sizes if 1 <= k <= total // 2]
    if all_cuts:
        return enumerate_bipartitions(total, sizes)
    return [Bipartition(total, tuple(range(k))) for k in sizes]


def scan_unitary(config: SweepConfig, n: int, gates: list[Gate] | None, rng: np.random.Generator) -> np.ndarray:
    if config.haar_v:
        return cdqc1_unitary(haar_random_unitary(n, rng))
    if gates is not None:
        if config.cdqc1:
            return cdqc1_unitary(circuit_unitary(gates, n))
        return circuit_unitary(gates, n + 1)
    if config.cdqc1:
        return cdqc1_unitary(np.eye(2**n, dtype=complex))
    return np.eye(2 ** (n + 1), dtype=complex)


def auto_witness(rho: np.ndarray, bp: Bipartition, tol: float | None = None) -> tuple[bool, float]:
    """PT witness with computational-basis vectors chosen from the PT itself.

    ``phi`` is the basis state with the smallest PT diagonal entry, ``psi``
    the one with the largest cross term against it. Margin is positive iff
    the witness fires.
    """
    tol = bipartite.default_tol(rho.shape[0]) if tol is None else tol
    pt = bipartite.partial_transpose(rho, bp)
    diag = np.abs(np.diagonal(pt))
    i = int(np.argmin(diag))
    col = np.abs(pt[:, i]).copy()
    col[i] = 0.0
    j = int(np.argmax(col))
    d = rho.shape[0]
    phi = np.zeros(d, complex)
    phi[i] = 1
    psi = np.zeros(d, complex)
    psi[j] = 1
    fired = bipartite.pt_witness(rho, bp, phi, psi, tol)
    return fired, float(min(tol - diag[i], col[j] - tol))


def evaluate_criterion(name: str, rho: np.ndarray, spec: np.ndarray, bp: Bipartition) -> tuple[bool, float] | None:
    """Verdict and margin for one criterion, or None where it does not apply."""
    total = bp.total_qubits
    k = bp.cut_size
    if name == "ppt":
        r = bipartite.is_ppt(rho, bp)
        return r.ppt, r.min_eigenvalue
    if name == "negativity":
        neg = bipartite.negativity(rho, bp)
        return neg <= bipartite.default_tol(rho.shape[0]), -neg
    if name == "johnston":
        if k != 1:
            return None
        v = spectrum.johnston_sfs(spec)
        return v.holds, v.margin
    if name == "hildebrand":
        if 2**k > spectrum.MAX_ORDERING_DIM:
            return None
        v = spectrum.hildebrand_ppt_from_spectrum(spec, k, total)
        return v.holds, v.margin
    if name == "degenerate":
        if not k < total - k:
            return None
        try:
            pair = spectrum.degenerate_pair_from_spectrum(spec, k)
        except InvalidSpectrumError:
            return None
        v = spectrum.degenerate_ppt_condition(pair, k)
        return v.holds, v.margin
    if name == "discord":
        r = discord.is_zero_discord(rho, bp)
        return r.zero_discord, -r.residual
    if name == "witness":
        return auto_witness(rho, bp)
    raise UsageError(f"unknown criterion {name!r}")


def run_scan(config: SweepConfig) -> list[CriterionReport]:
    """Evaluate the configured criteria over the grid; output order is grid-major, bipartition-minor."""
    import warnings

    gates = load_circuit(config.circuit) if config.circuit else None
    run_id = config.run_id()
    tasks = []
    for n in config.n_range:
        bps = scan_bipartitions(n + 1, config.cut_sizes, config.all_cuts)
        for seed in config.seeds:
            for ai, alpha in enumerate(config.alpha_grid):
                tasks.append((n, seed, ai, alpha, bps))

    def work(task):
        n, seed, ai, alpha, bps = task
        # counter-based stream: the same (seed, n) always yields the same circuit
        rng = np.random.default_rng([seed, n])
        u = scan_unitary(config, n, gates, rng)
        rho = u @ dqc1_state(n, alpha) @ u.conj().T
        spec = dqc1_spectrum(n, alpha)
        out = []
        for bp in bps:
            for name in config.criteria:
                t0 = time.perf_counter()
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", spectrum.OrderingSaturationWarning)
                    res = evaluate_criterion(name, rho, spec, bp)
                if res is None:
                    continue
                ms = int(round((time.perf_counter() - t0) * 1000))
                out.append(CriterionReport(run_id, n, float(alpha), bp.label(), name, bool(res[0]), float(res[1]), seed, ms))
        return out

    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            chunks = list(pool.map(work, tasks))
    else:
        chunks = [work(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def records_to_csv(records: Iterable[CriterionReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in dataclasses.asdict(r).items()})
    return buf.getvalue()


def records_to_json(records: Iterable[CriterionReport]) -> str:
    return json.dumps([dataclasses.asdict(r) for r in records], indent=1) + "\n"


def write_records(records: Sequence[CriterionReport], fmt: str, path: str | None) -> str:
    text = records_to_csv(records) if fmt == "csv" else records_to_json(records)
    if path:
        Path(path).write_text(text)
    return text


def read_csv_records(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))
