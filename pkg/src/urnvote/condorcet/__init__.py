"""Condorcet voting: series coefficients, the ``X_p`` sampler and ranking ballots."""

from urnvote.condorcet.ballots import (
    CondorcetSamplers,
    PermutationBallot,
    beat_probability,
    beats_counts,
    build_condorcet_samplers,
    condorcet_ballot,
    condorcet_budget,
    rank_draws,
    sample_draws,
    sample_permutation,
)
from urnvote.condorcet.coefficients import (
    CoeffTable,
    b1_coefficient,
    catalan_rhs,
    coeff_a,
    coeff_b,
    coeff_c,
    diagonal_sum,
    exact_table,
    float_coefficients,
)
from urnvote.condorcet.sampler import (
    DEFAULT_TERMS,
    ScanRow,
    XpSampler,
    build_sampler,
    conjecture_scan,
    scan_point,
)

__all__ = [
    "CoeffTable",
    "CondorcetSamplers",
    "DEFAULT_TERMS",
    "PermutationBallot",
    "ScanRow",
    "XpSampler",
    "b1_coefficient",
    "beat_probability",
    "beats_counts",
    "build_condorcet_samplers",
    "build_sampler",
    "catalan_rhs",
    "coeff_a",
    "coeff_b",
    "coeff_c",
    "condorcet_ballot",
    "condorcet_budget",
    "conjecture_scan",
    "diagonal_sum",
    "exact_table",
    "float_coefficients",
    "rank_draws",
    "sample_draws",
    "sample_permutation",
    "scan_point",
]
