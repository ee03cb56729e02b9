"""Entanglement, PPT-from-spectrum and discord analysis for one-clean-qubit (DQC1) circuits."""

from .bipartite import (
    Bipartition,
    boundary_orbit_demo,
    enumerate_bipartitions,
    is_ppt,
    negativity,
    partial_transpose,
    pt_witness,
    trace_distance,
)
from .circuits import (
    cdqc1_unitary,
    dqc1_expectation,
    haar_random_unitary,
    normalized_trace_estimate,
    r_theta,
    sample_dqc1,
)
from .discord import blocks, discord_depolarization_check, is_zero_discord
from .search import search_entangling_unitary, search_entangling_unitary_for_state
from .spectrum import (
    DegeneratePair,
    OrderingPair,
    consistent_sigma_minus,
    degenerate_ppt_condition,
    dqc1_all_cuts_bounds,
    dqc1_alpha_threshold,
    hildebrand_ppt_from_spectrum,
    johnston_sfs,
    lambda_matrix,
    realizable_orderings,
)
from .states import depolarize, dqc1_spectrum, dqc1_state, tau_state
from .tensor import embed, hermitian_spectrum, kron, trace_norm

__version__ = "0.1.0"
