"""Reproduction checks for the package's headline claims.

Each ``check_*`` function runs one claim at its stated tolerance and
returns a :class:`CheckResult`. ``tests/test_acceptance.py`` and
``scripts/run_acceptance.py`` both drive these.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from .bipartite import Bipartition, boundary_orbit_demo, enumerate_bipartitions, is_ppt, negativity, partial_transpose, trace_distance
from .circuits import cdqc1_unitary, dqc1_expectation, haar_random_unitary, r_theta, sample_dqc1
from .discord import discord_depolarization_check, is_zero_discord
from .search import search_entangling_unitary_for_state
from .spectrum import (
    OrderingSaturationWarning,
    degenerate_pair_from_spectrum,
    degenerate_ppt_condition,
    dqc1_all_cuts_bounds,
    dqc1_alpha_threshold,
    hildebrand_ppt_from_spectrum,
    johnston_sfs,
)
from .states import dqc1_spectrum, dqc1_state, random_density_matrix, tau_state
from .tensor import embed, hermitian_spectrum, trace_norm

GRID = [i / 100 for i in range(101)]


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget_seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number:2d} {self.title}: {self.detail} [{self.seconds:.2f}s / {self.budget_seconds:g}s]"


def _flip_failures(verdict: Callable[[float], bool], threshold: float) -> list[float]:
    """Grid points where the verdict differs from ``alpha >= threshold``."""
    return [a for a in GRID if verdict(a) != (a >= threshold - 1e-12)]


def check_johnston_threshold(ns=range(1, 7)) -> tuple[bool, str]:
    bad = {}
    for n in ns:
        wrong = _flip_failures(lambda a: johnston_sfs(dqc1_spectrum(n, a)).holds, 0.5)
        if wrong:
            bad[n] = wrong
    if not bad:
        return True, f"flip at 0.50 for n={list(ns)}"
    parts = [f"n={n}: {len(w)} grid points disagree ({w[0]:.2f}..{w[-1]:.2f})" for n, w in bad.items()]
    return False, "; ".join(parts)


def check_degenerate_and_hildebrand(ks=(1, 2, 3, 4)) -> tuple[bool, str]:
    bad = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrderingSaturationWarning)
        for k in ks:
            n = 2 * k
            thr = 1 - 2.0**-k
            deg = _flip_failures(lambda a: degenerate_ppt_condition(degenerate_pair_from_spectrum(dqc1_spectrum(n, a), k), k).holds, thr)
            hil = _flip_failures(lambda a: hildebrand_ppt_from_spectrum(dqc1_spectrum(n, a), k, n + 1).holds, thr)
            if deg or hil:
                bad.append(f"k={k}: degenerate {deg}, hildebrand {hil}")
    return not bad, "; ".join(bad) or f"both flip at 1-2^-k for k={list(ks)}"


def check_all_cuts_bounds() -> tuple[bool, str]:
    bad = []
    for n in range(2, 11):
        nec, suf = dqc1_all_cuts_bounds(n)
        if (nec, suf) != (1 - 2.0 ** -(n // 2), 1 - 2.0 ** -((n + 1) // 2)) or ((nec == suf) != (n % 2 == 0)):
            bad.append(n)
    return not bad, f"mismatch at n={bad}" if bad else "n=2..10 exact"


def check_boundary_orbit() -> tuple[bool, str]:
    worst_dist, worst_neg, count = 0.0, math.inf, 0
    for n in (1, 2, 3):
        for bp in enumerate_bipartitions(n + 1):
            for eps in (0.5, 0.1):
                cert = boundary_orbit_demo(n, bp, eps)
                # recompute independently of the certificate fields
                u = cert.unitary
                dist = trace_norm(u - np.eye(u.shape[0]))
                neg = negativity(u @ dqc1_state(n, 0.0) @ u.conj().T, bp)
                worst_dist = max(worst_dist, dist / eps)
                worst_neg = min(worst_neg, neg)
                count += 1
    ok = worst_dist < 1 and worst_neg > 1e-6
    return ok, f"{count} cases, max ||U-1||_1/eps={worst_dist:.3f}, min negativity={worst_neg:.2e}"


def check_witness_identity() -> tuple[bool, str]:
    worst = 0.0
    bp = Bipartition(2, (0,))
    for theta in (np.pi / 8, np.pi / 4, 3 * np.pi / 8):
        u = r_theta(theta)
        pt = partial_transpose(u @ dqc1_state(1, 0.0) @ u.conj().T, bp)
        worst = max(worst, abs(pt[0, 3] - 0.5 * np.cos(theta) * np.sin(theta)), abs(pt[3, 3]))
    return worst <= 1e-12, f"max deviation {worst:.1e}"


def check_tau_counterexample() -> tuple[bool, str]:
    dist_err = max(abs(trace_distance(tau_state(n), np.eye(2 ** (n + 1)) / 2 ** (n + 1)) - 2 / 2**n) for n in range(1, 7))
    johnston = [johnston_sfs(hermitian_spectrum(tau_state(n))).holds for n in range(1, 7)]
    negs = [search_entangling_unitary_for_state(tau_state(n), Bipartition(n + 1, (0,)), 2000, 0).negativity for n in (1, 2, 3)]
    ok = dist_err <= 1e-10 and not any(johnston) and all(v > 0 for v in negs)
    return ok, f"distance err {dist_err:.1e}, johnston holds on {sum(johnston)} of 6, search negativities {[f'{v:.3g}' for v in negs]}"


def check_orbit_isometry() -> tuple[bool, str]:
    worst = 0.0
    for n in (2, 3):
        d = 2 ** (n + 1)
        for s in range(20):
            u = haar_random_unitary(n + 1, 1000 * n + s)
            for alpha in (0.0, 0.3, 0.7):
                err = abs(trace_distance(u @ dqc1_state(n, alpha) @ u.conj().T, np.eye(d) / d) - (1 - alpha))
                worst = max(worst, err)
    return worst <= 1e-9, f"max deviation {worst:.1e}"


def random_spectrum(rng: np.random.Generator, d: int) -> np.ndarray:
    """Sorted random spectrum blended toward uniform so both verdicts occur."""
    w = rng.uniform(0, 1) ** 0.25
    lam = w / d + (1 - w) * rng.dirichlet(np.ones(d) * rng.uniform(0.2, 3))
    return np.sort(lam)[::-1]


def check_johnston_hildebrand(seed: int = 8) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    disagree, holds = 0, 0
    for d in (8, 16):
        for _ in range(200):
            lam = random_spectrum(rng, d)
            j = johnston_sfs(lam)
            h = hildebrand_ppt_from_spectrum(lam, 1, int(math.log2(d)))
            holds += j.holds
            if j.holds != h.holds or np.sign(j.margin) != np.sign(h.margin):
                disagree += 1
    return disagree == 0, f"{disagree} disagreements in 400 spectra ({holds} separable-from-spectrum)"


def check_soundness(unitaries: int = 100) -> tuple[bool, str]:
    worst, cases = math.inf, 0
    for n in range(1, 6):
        for k in range(1, (n + 1) // 2 + 1):
            thr = dqc1_alpha_threshold(k)
            cuts = enumerate_bipartitions(n + 1, [k])
            for alpha in (thr + 0.01, (thr + 1) / 2):
                rho0 = dqc1_state(n, alpha)
                for s in range(unitaries):
                    u = haar_random_unitary(n + 1, [n, k, s])
                    rho = u @ rho0 @ u.conj().T
                    for bp in cuts:
                        worst = min(worst, is_ppt(rho, bp).min_eigenvalue)
                        cases += 1
    return worst >= -1e-9, f"{cases} (state, cut) cases, min PT eigenvalue {worst:.2e}"


def check_cdqc1_clean_cut() -> tuple[bool, str]:
    worst_neg, all_ppt = 0.0, True
    for n in (2, 3):
        bp = Bipartition(n + 1, (0,))
        for s in range(20):
            u = cdqc1_unitary(haar_random_unitary(n, 500 + 10 * n + s))
            for alpha in (0.0, 0.5):
                rho = u @ dqc1_state(n, alpha) @ u.conj().T
                all_ppt &= is_ppt(rho, bp).ppt
                worst_neg = max(worst_neg, negativity(rho, bp))
    return all_ppt and worst_neg <= 1e-9, f"all PPT: {all_ppt}, max negativity {worst_neg:.1e}"


def check_trace_estimation(runs: int = 100, shots: int = 100_000) -> tuple[bool, str]:
    worst_exact, worst_rate = 0.0, 1.0
    for i in range(10):
        n = 2 + i % 2
        v = haar_random_unitary(n, 900 + i)
        u = cdqc1_unitary(v)
        target = np.trace(v).real / 2**n
        for alpha in (0.0, 0.5):
            expected = (1 - alpha) * target
            worst_exact = max(worst_exact, abs(dqc1_expectation(u, alpha, "x") - expected))
            hits = 0
            for r in range(runs):
                est = sample_dqc1(u, alpha, "x", shots, [i, int(alpha * 10), r])
                hits += abs(est.mean - expected) <= 5 * est.stderr
            worst_rate = min(worst_rate, hits / runs)
    ok = worst_exact <= 1e-10 and worst_rate >= 0.95
    return ok, f"exact err {worst_exact:.1e}, worst within-5SE rate {worst_rate:.2f}"


def check_discord_facts(seed: int = 12) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    # (a) entangled => discordant, both measured sides
    entangled, violations = 0, 0
    for _ in range(60):
        q = int(rng.integers(2, 4))
        rho = random_density_matrix(q, rng, rank=int(rng.integers(1, 3)))
        for bp in enumerate_bipartitions(q):
            if not is_ppt(rho, bp).ppt:
                entangled += 1
                violations += is_zero_discord(rho, bp).zero_discord + is_zero_discord(rho, bp.complement()).zero_discord
    # (b) verdict invariant under depolarization; half discordant, half classical-quantum
    inv_fail = 0
    for i in range(20):
        if i % 2:
            rho = random_density_matrix(3, rng, rank=int(rng.integers(2, 8)))
        else:
            w = embed(haar_random_unitary(1, rng), [0], 3)
            p = rng.dirichlet([1, 1])
            rho = p[0] * np.kron(np.diag([1, 0]), random_density_matrix(2, rng)) + p[1] * np.kron(np.diag([0, 1]), random_density_matrix(2, rng))
            rho = w @ rho @ w.conj().T
        inv_fail += not discord_depolarization_check(rho, Bipartition(3, (0,)), [0.0, 0.3, 0.9])
    # (c) cDQC1 output: classical on the register, discordant on the clean qubit
    c_fail = 0
    for s in range(10):
        u = cdqc1_unitary(haar_random_unitary(2, 700 + s))
        rho = u @ dqc1_state(2, 0.0) @ u.conj().T
        c_fail += not is_zero_discord(rho, Bipartition(3, (1, 2))).zero_discord
        c_fail += is_zero_discord(rho, Bipartition(3, (0,))).zero_discord
    ok = violations == 0 and entangled > 0 and inv_fail == 0 and c_fail == 0
    return ok, f"(a) {violations} violations over {entangled} entangled cuts, (b) {inv_fail}/20 changed, (c) {c_fail} wrong verdicts"


def _unitary_at_distance(h: np.ndarray, target: float) -> np.ndarray:
    def f(t):
        return trace_norm(expm(1j * t * h) - np.eye(h.shape[0])) - target

    # ||exp(itH) - 1||_1 grows monotonically until some eigenphase reaches pi
    hi = np.pi / np.max(np.abs(np.linalg.eigvalsh(h)))
    return expm(1j * brentq(f, 0.0, hi, xtol=1e-14) * h)


def check_perturbation_inequality(seed: int = 13) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for eps in (0.2, 0.05):
        for _ in range(50):
            q = int(rng.integers(1, 5))
            d = 2**q
            rho = random_density_matrix(q, rng, rank=int(rng.integers(1, d + 1)))
            a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            u = _unitary_at_distance((a + a.conj().T) / 2, rng.uniform(0.5, 0.999) * eps / 2)
            assert trace_norm(u - np.eye(d)) < eps / 2
            worst = max(worst, trace_norm(u @ rho @ u.conj().T - rho) / eps)
    return worst < 1, f"max ||U rho U^dag - rho||_1 / eps = {worst:.3f}"


CHECKS: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "Johnston threshold at 1/2", check_johnston_threshold, 1),
    (2, "degenerate and Hildebrand flips", check_degenerate_and_hildebrand, 60),
    (3, "all-cuts bounds", check_all_cuts_bounds, 1),
    (4, "boundary orbit construction", check_boundary_orbit, 10),
    (5, "PT witness identity", check_witness_identity, 1),
    (6, "tau counterexample", check_tau_counterexample, 120),
    (7, "orbit isometry", check_orbit_isometry, 30),
    (8, "Johnston-Hildebrand p=2 agreement", check_johnston_hildebrand, 10),
    (9, "soundness sampling", check_soundness, 300),
    (10, "cDQC1 clean-qubit cut PPT", check_cdqc1_clean_cut, 60),
    (11, "trace estimation", check_trace_estimation, 120),
    (12, "discord facts", check_discord_facts, 60),
    (13, "perturbation inequality", check_perturbation_inequality, 1),
]


def run_check(number: int) -> CheckResult:
    num, title, fn, budget = CHECKS[number - 1]
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(num, title, bool(passed), detail, time.perf_counter() - t0, budget)


def run_all() -> list[CheckResult]:
    return [run_check(i) for i in range(1, len(CHECKS) + 1)]
