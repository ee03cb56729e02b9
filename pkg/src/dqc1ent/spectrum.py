"""Spectrum-only PPT criteria.

Everything here looks only at a sorted eigenvalue list and the party
dimensions, and answers whether *every* state with that spectrum is PPT
(or, for the qubit-vs-rest cut, separable). That is, whether the whole
unitary orbit avoids entanglement.

Index pairs for the ordering machinery are 0-based ``(i, j)`` with
``i <= j``, listed row-major; ranks are 1-based, rank 1 being the
largest product ``x_i x_j``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import InvalidSpectrumError, UsageError
from .tensor import EPS_EIG

MARGIN_SLACK = 1e-12
DEFAULT_SAMPLES = {2: 200, 3: 2_000, 4: 10_000, 8: 200_000, 16: 20_000}
MAX_ORDERING_DIM = 16


class Verdict(NamedTuple):
    holds: bool
    margin: float

    def __bool__(self) -> bool:
        return self.holds


class OrderingSaturationWarning(UserWarning):
    """New orderings were still appearing in the last 10% of samples."""


def check_spectrum(spectrum, tol: float = EPS_EIG) -> np.ndarray:
    lam = np.asarray(spectrum, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise InvalidSpectrumError("invalid spectrum: expected a non-empty 1-d list")
    if np.any(np.diff(lam) > tol):
        raise InvalidSpectrumError("invalid spectrum: not sorted in non-increasing order")
    if lam[-1] < -tol:
        raise InvalidSpectrumError(f"invalid spectrum: negative eigenvalue {lam[-1]:.3e}")
    return np.clip(lam, 0.0, None)


# --- qubit vs rest ---------------------------------------------------------


def johnston_sfs(spectrum) -> Verdict:
    """Separability-from-spectrum for a qubit-vs-rest cut.

    Holds iff ``l_1 <= l_{d-1} + 2 sqrt(l_{d-2} l_d)`` (1-based, sorted
    decreasing). The margin is right-hand side minus ``l_1``.
    """
    lam = check_spectrum(spectrum)
    d = lam.size
    if d < 4 or d & (d - 1):
        raise InvalidSpectrumError(f"invalid spectrum: length {d} is not a power of two >= 4")
    margin = float(lam[d - 2] + 2.0 * math.sqrt(lam[d - 3] * lam[d - 1]) - lam[0])
    return Verdict(margin >= -MARGIN_SLACK, margin)


# --- orderings -------------------------------------------------------------


@lru_cache(maxsize=None)
def pairs_plus(p: int) -> np.ndarray:
    return np.array([(i, j) for i in range(p) for j in range(i, p)], dtype=int)


@lru_cache(maxsize=None)
def strict_mask(p: int) -> np.ndarray:
    pp = pairs_plus(p)
    return pp[:, 0] < pp[:, 1]


def pairs_minus(p: int) -> np.ndarray:
    return pairs_plus(p)[strict_mask(p)]


def _ranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks along the last axis, rank 1 for the smallest value."""
    order = np.argsort(values, axis=-1, kind="stable")
    ranks = np.empty_like(order)
    np.put_along_axis(ranks, order, np.arange(1, values.shape[-1] + 1), axis=-1)
    return ranks


def consistent_sigma_minus(sigma_plus) -> np.ndarray:
    """The unique ordering of strict pairs consistent with ``sigma_plus``.

    Restricts ``sigma_plus`` to pairs with ``i < j`` and compresses the
    ranks to ``1..p(p-1)/2``. Works row-wise on a 2-d batch.
    """
    sp = np.asarray(sigma_plus)
    p = int(round((math.sqrt(8 * sp.shape[-1] + 1) - 1) / 2))
    return _ranks(sp[..., strict_mask(p)])


@dataclass(frozen=True)
class OrderingPair:
    """A consistent pair of linear orderings ``(sigma_plus, sigma_minus)``.

    ``sigma_plus[t]`` is the rank of ``pairs_plus(p)[t]`` and
    ``sigma_minus[t]`` the rank of ``pairs_minus(p)[t]``.
    """

    p: int
    sigma_plus: tuple[int, ...]
    sigma_minus: tuple[int, ...]

    @classmethod
    def from_sigma_plus(cls, sigma_plus) -> "OrderingPair":
        sp = np.asarray(sigma_plus, dtype=int)
        p = int(round((math.sqrt(8 * sp.size + 1) - 1) / 2))
        return cls(p, tuple(int(v) for v in sp), tuple(int(v) for v in consistent_sigma_minus(sp)))

    @classmethod
    def from_vector(cls, x) -> "OrderingPair":
        """Ordering compatible with ``x``: products sorted decreasing, ties by pair index."""
        x = np.asarray(x, dtype=float)
        pp = pairs_plus(x.size)
        return cls.from_sigma_plus(_ranks(-(x[pp[:, 0]] * x[pp[:, 1]])))

    def is_consistent(self) -> bool:
        p = self.p
        sp = np.asarray(self.sigma_plus)
        sm = np.asarray(self.sigma_minus)
        if sorted(sp) != list(range(1, p * (p + 1) // 2 + 1)):
            return False
        if sorted(sm) != list(range(1, p * (p - 1) // 2 + 1)):
            return False
        restricted = sp[strict_mask(p)]
        return bool(np.all((restricted[:, None] < restricted[None, :]) <= (sm[:, None] < sm[None, :])))

    def rank_plus(self, i: int, j: int) -> int:
        return self.sigma_plus[_pair_index(self.p, i, j)]


def _pair_index(p: int, i: int, j: int) -> int:
    # row-major offset of (i, j), i <= j, within pairs_plus(p)
    return i * p - i * (i - 1) // 2 + (j - i)


def _sample_vectors(p: int, count: int, rng: np.random.Generator) -> np.ndarray:
    # Two families: sorted |N(0,1)|, and geometric-like decays exp(-cumsum(Exp)),
    # which reach extreme ratios the Gaussian family rarely produces.
    half = count // 2
    g = np.sort(np.abs(rng.standard_normal((half, p))), axis=1)[:, ::-1]
    steps = rng.exponential(1.0, (count - half, p)) * rng.uniform(0.05, 3.0, (count - half, 1))
    e = np.exp(-np.cumsum(steps, axis=1))
    return np.concatenate([g, e])


@dataclass(frozen=True)
class OrderingSample:
    """Realizable orderings found by sampling.

    ``sigma_plus`` has one row per distinct ordering.
    """

    p: int
    sigma_plus: np.ndarray
    sigma_minus: np.ndarray
    samples: int
    saturated: bool

    def __len__(self) -> int:
        return self.sigma_plus.shape[0]

    def __iter__(self):
        for row in self.sigma_plus:
            yield OrderingPair.from_sigma_plus(row)

    def as_set(self) -> frozenset[OrderingPair]:
        return frozenset(self)


def realizable_orderings(p: int, samples: int | None = None, seed: int = 0) -> OrderingSample:
    """Sample ordering pairs realised by strictly decreasing positive vectors.

    Vectors whose pairwise products are not distinct to 1e-12 relative
    precision are discarded, so every kept sample induces a total order.
    A warning is emitted when the final 10% of samples still produced new
    orderings.
    """
    if p < 2:
        raise UsageError("p must be at least 2")
    if p > MAX_ORDERING_DIM:
        raise UsageError(f"party dimension too large for ordering enumeration: p={p} > {MAX_ORDERING_DIM}")
    if samples is None:
        samples = DEFAULT_SAMPLES.get(p, 10_000)
    if samples < 1:
        raise UsageError("samples must be >= 1")
    result = _realizable_orderings(p, samples, seed)
    if not result.saturated:
        warnings.warn(
            f"ordering sample for p={p} not saturated after {samples} samples ({len(result)} found)",
            OrderingSaturationWarning,
            stacklevel=2,
        )
    return result


@lru_cache(maxsize=32)
def _realizable_orderings(p: int, samples: int, seed: int) -> OrderingSample:
    rng = np.random.default_rng(seed)
    pp = pairs_plus(p)
    chunk = max(1, min(samples, 2_000_000 // len(pp)))
    first_seen: dict[bytes, int] = {}
    rows: list[np.ndarray] = []
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        x = _sample_vectors(p, m, rng)
        prods = x[:, pp[:, 0]] * x[:, pp[:, 1]]
        srt = np.sort(prods, axis=1)
        gaps = np.diff(srt, axis=1) / srt[:, 1:]
        ok = np.all(gaps > 1e-12, axis=1) if len(pp) > 1 else np.ones(m, bool)
        ranks = _ranks(-prods[ok])
        idx = np.flatnonzero(ok) + done
        uniq, first = np.unique(ranks, axis=0, return_index=True)
        for row, f in zip(uniq, first):
            key = row.tobytes()
            if key not in first_seen:
                first_seen[key] = int(idx[f])
                rows.append(row)
        done += m
    sigma = np.array(rows, dtype=int)
    sigma_minus = consistent_sigma_minus(sigma)
    sigma.setflags(write=False)
    sigma_minus.setflags(write=False)
    last_new = max(first_seen.values())
    saturated = last_new < 0.9 * samples
    return OrderingSample(p, sigma, sigma_minus, samples, saturated)


# --- Hildebrand's matrix ---------------------------------------------------


def lambda_matrices(spectrum, sigma_plus: np.ndarray, p: int, sigma_minus: np.ndarray | None = None) -> np.ndarray:
    """Batch of ``p x p`` matrices, one per row of ``sigma_plus``.

    Upper triangle (``k <= l``) holds the ``sigma_plus(k, l)``-th smallest
    eigenvalue; strictly lower entry ``(l, k)`` holds minus the
    ``sigma_minus(k, l)``-th largest.
    """
    lam = np.asarray(spectrum, dtype=float)
    sp = np.atleast_2d(np.asarray(sigma_plus, dtype=int))
    p_plus = p * (p + 1) // 2
    if sp.shape[1] != p_plus:
        raise UsageError(f"ordering has {sp.shape[1]} pairs, expected {p_plus} for p={p}")
    d = lam.size
    if d < p_plus or d < p * (p - 1) // 2:
        raise InvalidSpectrumError(f"spectrum too short: {d} values for p={p}")
    sm = consistent_sigma_minus(sp) if sigma_minus is None else np.atleast_2d(sigma_minus)
    pp = pairs_plus(p)
    pm = pairs_minus(p)
    out = np.zeros((sp.shape[0], p, p))
    out[:, pp[:, 0], pp[:, 1]] = lam[d - sp]
    out[:, pm[:, 1], pm[:, 0]] = -lam[sm - 1]
    return out


def lambda_matrix(spectrum, ordering: OrderingPair, p: int | None = None) -> np.ndarray:
    p = ordering.p if p is None else p
    if p != ordering.p:
        raise UsageError(f"ordering is for p={ordering.p}, not {p}")
    lam = np.asarray(spectrum, dtype=float)
    sp = np.asarray(ordering.sigma_plus)
    sm = np.asarray(ordering.sigma_minus)
    d = lam.size
    if d < sp.max() or d < (sm.max() if sm.size else 0):
        raise InvalidSpectrumError(f"spectrum too short: {d} values for p={p}")
    out = np.zeros((p, p))
    for t, (k, l) in enumerate(pairs_plus(p)):
        out[k, l] = lam[d - sp[t]]
    for t, (k, l) in enumerate(pairs_minus(p)):
        out[l, k] = -lam[sm[t] - 1]
    return out


def _distinct_value_orderings(lam: np.ndarray, orderings: OrderingSample) -> tuple[np.ndarray, np.ndarray]:
    """Drop orderings whose matrices coincide with an earlier one for this spectrum.

    Degenerate spectra map many orderings to the same matrix; comparing
    eigenvalue class codes (not floats) keeps the dedup exact and cheap.
    """
    p = orderings.p
    sigma_plus, sm = orderings.sigma_plus, orderings.sigma_minus
    d = lam.size
    p_plus, p_minus = p * (p + 1) // 2, p * (p - 1) // 2
    if np.ptp(lam[d - p_plus :]) == 0 and np.ptp(lam[:p_minus]) == 0:
        # only the extreme eigenvalues enter, and they are constant
        return sigma_plus[:1], sm[:1]
    _, classes = np.unique(lam, return_inverse=True)
    codes = np.concatenate([classes[d - sigma_plus], classes[sm - 1]], axis=1).astype(np.int32)
    codes = np.ascontiguousarray(codes)
    keys = codes.view(np.dtype((np.void, codes.dtype.itemsize * codes.shape[1]))).ravel()
    _, first = np.unique(keys, return_index=True)
    first = np.sort(first)
    return sigma_plus[first], sm[first]


def psd_tolerance(p: int) -> float:
    return 1e-10 * p


def hildebrand_ppt_from_spectrum(
    spectrum,
    k: int,
    total: int,
    samples: int | None = None,
    seed: int = 0,
) -> Verdict:
    """PPT-from-spectrum for a ``{k; total-k}`` qubit cut.

    Holds iff ``L + L^T`` is PSD for every sampled realizable ordering,
    where ``L`` is the matrix from :func:`lambda_matrices` with
    ``p = 2**k``. A true verdict covers every state with this spectrum and
    every tensor split of the space into dimensions ``(2**k, 2**(total-k))``.
    The margin is the smallest eigenvalue over all orderings.
    """
    lam = check_spectrum(spectrum)
    if lam.size != 2**total:
        raise InvalidSpectrumError(f"invalid spectrum: length {lam.size} != 2**{total}")
    if k < 1 or k > total - k:
        raise UsageError(f"cut size k={k} must satisfy 1 <= k <= total - k for total={total}")
    p = 2**k
    if p > MAX_ORDERING_DIM:
        raise UsageError(f"party dimension too large for ordering enumeration: k={k}")
    orderings = realizable_orderings(p, samples, seed)
    sp, sm = _distinct_value_orderings(lam, orderings)
    mats = lambda_matrices(lam, sp, p, sm)
    sym = mats + np.transpose(mats, (0, 2, 1))
    margin = float(np.min(np.linalg.eigvalsh(sym)[:, 0]))
    return Verdict(margin >= -psd_tolerance(p), margin)


# --- highly degenerate spectra ----------------------------------------------


@dataclass(frozen=True)
class DegeneratePair:
    lambda_plus: float
    lambda_minus: float

    def __post_init__(self):
        if not self.lambda_plus >= self.lambda_minus >= 0:
            raise InvalidSpectrumError("need lambda_plus >= lambda_minus >= 0")


def degenerate_multiplicities(m: int) -> tuple[int, int]:
    """Required multiplicities ``(top, bottom)`` for party-A qubit count ``m``."""
    top = 2 ** (2 * m - 1) - 2 ** (m - 1)
    bottom = 2 ** (2 * m - 1) + 2 ** (m - 1)
    return top, bottom


def degenerate_pair_from_spectrum(spectrum, m: int, rel_tol: float = 1e-12) -> DegeneratePair:
    """Extract ``(lambda_plus, lambda_minus)`` if the spectrum has the required degeneracies.

    The largest value must repeat at least ``2**(2m-1) - 2**(m-1)`` times
    and the smallest at least ``2**(2m-1) + 2**(m-1)`` times.
    """
    lam = check_spectrum(spectrum)
    top, bottom = degenerate_multiplicities(m)
    if lam.size < 2 ** (2 * m):
        raise InvalidSpectrumError(f"spectrum of length {lam.size} too short for m={m}")
    scale = max(abs(lam[0]), 1e-300)
    if np.ptp(lam[:top]) > rel_tol * scale or np.ptp(lam[lam.size - bottom :]) > rel_tol * scale:
        raise InvalidSpectrumError(f"spectrum lacks the extreme degeneracies required for m={m}")
    return DegeneratePair(float(lam[0]), float(lam[-1]))


def degenerate_ppt_condition(pair: DegeneratePair, m: int) -> Verdict:
    """Closed-form PPT-from-spectrum test: ``(l+ + l-) - 2**m (l+ - l-) >= 0``.

    Only meaningful when the spectrum carries the degeneracies checked by
    :func:`degenerate_pair_from_spectrum`.
    """
    if m < 1:
        raise UsageError("m must be >= 1")
    lp, lm = pair.lambda_plus, pair.lambda_minus
    margin = (lp + lm) - 2.0**m * (lp - lm)
    return Verdict(margin >= -MARGIN_SLACK * max(lp + lm, 1.0), float(margin))


# --- DQC1 thresholds ---------------------------------------------------------


def dqc1_alpha_threshold(k: int) -> float:
    """Smallest noise level at which a ``{k; n+1-k}`` cut (``k < (n+1)/2``) stays PPT for every circuit."""
    if k < 1:
        raise UsageError("k must be >= 1")
    return 1.0 - 2.0**-k


def dqc1_all_cuts_bounds(n: int) -> tuple[float, float]:
    """(necessary, sufficient) noise levels for PPT-from-spectrum across all cuts of ``n + 1`` qubits."""
    if n < 2:
        raise UsageError("n must be >= 2")
    return 1.0 - 2.0 ** -(n // 2), 1.0 - 2.0 ** -((n + 1) // 2)
